//! Brute-force verification: classify sampled stability vectors straight
//! from the definitions and compare with everything the fan claims.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::mtf::{build_mtf_fan, random_interior_point, MTFFan, DEFAULT_SEED};
use crate::polyhedra::linalg::dot;
use crate::polyhedra::{grid_points, minkowski_sum, normal_fan, validate_generalized_fan, Cone, Q};
use crate::quiver::Module;
use crate::report::Report;
use crate::stability::{
    canonical_sequences_in, definition_key, in_class_closure, is_m_tf_equivalent,
    is_m_tf_equivalent_by_definition, is_semistable_in, supp_dims, supp_factors, t_set_in, values,
    StabilityVector,
};
use crate::sublattice::newton_polytope_of;

pub const DEFAULT_BOUND: i64 = 3;
pub const DEFAULT_PAIR_BUDGET: usize = 2000;
/// Environment variable read for the size of the worker pool.
pub const THREADS_ENV: &str = "MTF_THREADS";

/// Stability vectors at which a fan is checked.
#[derive(Clone, Debug)]
pub struct SampleSet {
    pub seed: u64,
    pub bound: i64,
    pub points: Vec<StabilityVector>,
}

impl SampleSet {
    /// Grid points of `[-bound, bound]^n`, then for each cone one random
    /// interior point and, if the cone has facets, one point inside a
    /// facet chosen through a facet normal.
    pub fn new(fan: &MTFFan, bound: i64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<StabilityVector> =
            grid_points(fan.n(), bound).into_iter().map(StabilityVector::new).collect();
        for cone in fan.fan().cones() {
            points.push(StabilityVector::new(random_interior_point(cone, &mut rng)));
            if let Some(normal) = cone.inequalities().choose(&mut rng) {
                let facet = cone.face_cut_by(normal);
                points.push(StabilityVector::new(random_interior_point(&facet, &mut rng)));
            }
        }
        Self { seed, bound, points }
    }

    pub fn default_for(fan: &MTFFan) -> Self {
        Self::new(fan, DEFAULT_BOUND, DEFAULT_SEED)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Runs `f` on a pool sized by [`THREADS_ENV`] when it is set.
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok());
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// Checks one stability vector against the cone it is located in.
pub fn verify_point(fan: &MTFFan, theta: &StabilityVector) -> Report {
    let mut r = Report::new();
    if let Err(e) = verify_point_into(fan, theta, &mut r) {
        r.check("evaluation", false, || format!("{theta}: {e}"));
    }
    r
}

fn verify_point_into(fan: &MTFFan, theta: &StabilityVector, r: &mut Report) -> Result<()> {
    let set = fan.submodules();
    let m = fan.module();
    let id = fan.locate(theta)?;
    let cone = fan.cone(id);
    let data = fan.data(id);
    r.check("locate-interior", cone.contains_in_relative_interior(theta.as_slice()), || {
        format!("{theta} is not interior to cone {id}")
    });

    let cs = canonical_sequences_in(theta, set)?;
    r.check("class-t", cs.t_index == data.t_index, || format!("{theta}: t differs from cone {id}"));
    r.check("class-tbar", cs.tbar_index == data.tbar_index, || {
        format!("{theta}: t̄ differs from cone {id}")
    });
    r.check(
        "class-quotients",
        cs.w == data.w && cs.f == data.f && cs.fbar == data.fbar,
        || format!("{theta}: w, f or f̄ differs from cone {id}"),
    );
    let ts = t_set_in(theta, set, cs.t_index);
    r.check("class-tset", ts == data.t_set, || format!("{theta}: t-set differs from cone {id}"));
    let supp = supp_dims(&supp_factors(theta, &cs.w)?);
    r.check("class-supp", supp == data.supp_dims(), || {
        format!("{theta}: support {supp:?} differs from cone {id}")
    });
    r.absorb(cs.verify(theta, m)?);

    let p = fan.polytope();
    let as_q = |i: usize| -> Vec<Q> {
        set.dim_vector(i).as_slice().iter().map(|&x| Q::from_integer(x.into())).collect()
    };
    let min = p.face_min(id).map(|v| p.vertices()[v].clone());
    let max = p.face_max(id).map(|v| p.vertices()[v].clone());
    r.check("newton-min", min.as_ref() == Some(&as_q(cs.t_index)), || {
        format!("{theta}: [t] is not the least point of the located face")
    });
    r.check("newton-max", max.as_ref() == Some(&as_q(cs.tbar_index)), || {
        format!("{theta}: [t̄] is not the greatest point of the located face")
    });
    let best = p
        .vertices()
        .iter()
        .map(|v| dot(theta.as_slice(), v))
        .max()
        .expect("nonempty polytope");
    let vals = values(theta, set);
    for (l, val) in vals.iter().enumerate() {
        r.check("tset-face", ts.contains(&l) == (*val == best), || {
            format!("{theta}: membership of submodule {l} in the t-set disagrees with the face")
        });
    }

    if !m.is_zero() {
        let wall = fan.wall_cone()?;
        let semistable = is_semistable_in(theta, set);
        r.check("wall-membership", semistable == wall.contains(theta.as_slice()), || {
            format!("{theta}: semistable = {semistable}, but wall containment disagrees")
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct FanVerification {
    pub report: Report,
    pub samples: usize,
    pub classes_observed: usize,
    pub pairs_checked: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Number of explicit pairwise equivalence and closure checks.
    pub pair_budget: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            pair_budget: DEFAULT_PAIR_BUDGET,
            seed: DEFAULT_SEED,
        }
    }
}

/// Runs [`verify_point`] on every sample and checks that located cones,
/// equivalence by `t`-sets and equivalence by definition partition the
/// samples identically. A budget of explicit pairs is also checked through
/// the pairwise predicates, including closure against the face relation.
pub fn verify_fan(fan: &MTFFan, samples: &SampleSet, options: VerifyOptions) -> FanVerification {
    with_pool(|| verify_fan_inner(fan, samples, options))
}

type PointOutcome = (Report, Option<usize>, Option<(Vec<usize>, crate::stability::DefinitionKey)>);

fn verify_fan_inner(fan: &MTFFan, samples: &SampleSet, options: VerifyOptions) -> FanVerification {
    let set = fan.submodules();
    let per_point: Vec<PointOutcome> = samples
        .points
        .par_iter()
        .map(|theta| {
            let report = verify_point(fan, theta);
            let loc = fan.locate(theta).ok();
            let keys = canonical_sequences_in(theta, set).ok().and_then(|cs| {
                let ts: Vec<usize> = t_set_in(theta, set, cs.t_index).into_iter().collect();
                definition_key(theta, set).ok().map(|k| (ts, k))
            });
            (report, loc, keys)
        })
        .collect();

    let mut report = Report::new();
    let mut by_cone: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut tset_to_cone: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
    let mut def_to_cone: BTreeMap<crate::stability::DefinitionKey, BTreeSet<usize>> = BTreeMap::new();
    let mut cone_to_tset: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    let mut cone_to_def: BTreeMap<usize, BTreeSet<crate::stability::DefinitionKey>> = BTreeMap::new();
    for (i, (r, loc, keys)) in per_point.into_iter().enumerate() {
        report.absorb(r);
        report.check("completeness", loc.is_some(), || format!("sample {i} was not located"));
        let (Some(loc), Some((ts, dk))) = (loc, keys) else {
            continue;
        };
        by_cone.entry(loc).or_default().insert(i);
        tset_to_cone.entry(ts.clone()).or_default().insert(loc);
        def_to_cone.entry(dk.clone()).or_default().insert(loc);
        cone_to_tset.entry(loc).or_default().insert(ts);
        cone_to_def.entry(loc).or_default().insert(dk);
    }
    for (cone, keys) in &cone_to_tset {
        report.check("equivalence-tset-within-cone", keys.len() == 1, || {
            format!("samples in cone {cone} have {} different t-sets", keys.len())
        });
    }
    for (cone, keys) in &cone_to_def {
        report.check("equivalence-definition-within-cone", keys.len() == 1, || {
            format!("samples in cone {cone} have {} different definition keys", keys.len())
        });
    }
    for cones in tset_to_cone.values() {
        report.check("equivalence-tset-across-cones", cones.len() == 1, || {
            format!("cones {cones:?} share a t-set")
        });
    }
    for cones in def_to_cone.values() {
        report.check("equivalence-definition-across-cones", cones.len() == 1, || {
            format!("cones {cones:?} share a definition key")
        });
    }

    let pairs = choose_pairs(&by_cone, samples.len(), options);
    let pair_reports: Vec<Report> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut r = Report::new();
            let (a, b) = (&samples.points[i], &samples.points[j]);
            let (Ok(la), Ok(lb)) = (fan.locate(a), fan.locate(b)) else {
                return r;
            };
            let same = la == lb;
            match (
                is_m_tf_equivalent(a, b, set),
                is_m_tf_equivalent_by_definition(a, b, set),
                in_class_closure(a, b, set),
            ) {
                (Ok(by_tset), Ok(by_def), Ok(closure)) => {
                    r.check("pair-tset", by_tset == same, || {
                        format!("{a} ~ {b}: t-set route says {by_tset}, cones say {same}")
                    });
                    r.check("pair-definition", by_def == same, || {
                        format!("{a} ~ {b}: definition route says {by_def}, cones say {same}")
                    });
                    let face = fan.fan().faces_of(lb).contains(&la);
                    r.check("closure-face", closure == face, || {
                        format!("{a} in closure of class of {b}: {closure}, face relation: {face}")
                    });
                }
                _ => r.check("pair-evaluation", false, || format!("pair {a}, {b} failed to evaluate")),
            }
            r
        })
        .collect();
    for r in pair_reports {
        report.absorb(r);
    }
    FanVerification {
        report,
        samples: samples.len(),
        classes_observed: by_cone.len(),
        pairs_checked: pairs.len(),
    }
}

/// Up to the budget: every same-cone pair of consecutive samples first,
/// then one pair for each pair of cones, then random pairs.
fn choose_pairs(by_cone: &BTreeMap<usize, BTreeSet<usize>>, n: usize, options: VerifyOptions) -> Vec<(usize, usize)> {
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for members in by_cone.values() {
        let v: Vec<usize> = members.iter().copied().collect();
        for w in v.windows(2) {
            pairs.insert((w[0], w[1]));
        }
    }
    let reps: Vec<usize> = by_cone.values().filter_map(|m| m.iter().next().copied()).collect();
    for (a, &x) in reps.iter().enumerate() {
        for &y in &reps[a + 1..] {
            pairs.insert((x, y));
            pairs.insert((y, x));
        }
    }
    let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    pairs.shuffle(&mut rng);
    pairs.truncate(options.pair_budget);
    while pairs.len() < options.pair_budget && n > 1 && pairs.len() < n * (n - 1) {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    pairs
}

/// For every cone, the support rank plus the cone dimension is `n`; for the
/// faces of the wall, the cone is the wall cut by the vanishing of `θ` on
/// the support.
pub fn verify_dim_formula(fan: &MTFFan) -> Report {
    let mut r = Report::new();
    let n = fan.n();
    for (i, data) in fan.all_data().iter().enumerate() {
        let (rank, dim) = (data.supp_rank(), fan.cone(i).dim());
        r.check("dim-formula", rank + dim == n, || {
            format!("cone {i}: support rank {rank} + dimension {dim} ≠ {n}")
        });
    }
    if let (Ok(wall), Ok(faces)) = (fan.wall_cone(), fan.wall_faces()) {
        for i in faces {
            let mut eqs = wall.equalities_q();
            eqs.extend(
                fan.data(i)
                    .supp
                    .iter()
                    .map(|s| s.dim.as_slice().iter().map(|&x| Q::from_integer(x.into())).collect()),
            );
            let cut = Cone::from_h(n, &eqs, &wall.inequalities_q());
            r.check("wall-face-cut", &cut == fan.cone(i), || {
                format!("wall face {i} is not cut out by its support")
            });
        }
    }
    r
}

/// Structural properties of the fan and its relation to the Newton polytope.
pub fn verify_structure(fan: &MTFFan, bound: i64) -> Report {
    let mut r = validate_generalized_fan(fan.fan(), Some(bound));
    let n = fan.n();
    let p = fan.polytope();
    let count = fan.len();
    for i in 0..count {
        let face = p.face(i);
        r.check("dual-dimension", fan.cone(i).dim() + face.dim == n, || {
            format!("cone {i} has dimension {} for a face of dimension {}", fan.cone(i).dim(), face.dim)
        });
        for j in 0..count {
            let face_incl = face.vertex_ids.iter().all(|v| p.face(j).vertex_ids.contains(v));
            r.check(
                "order-reversing",
                face_incl == fan.cone(j).is_subset_of(fan.cone(i)),
                || format!("faces {i} ⊆ {j} is not mirrored by the cones"),
            );
        }
        let data = fan.data(i);
        let maximal = fan.is_maximal(i);
        r.check(
            "maximality",
            maximal == data.w.is_zero() && maximal == (data.t_index == data.tbar_index),
            || format!("cone {i}: maximal = {maximal}, but w or t, t̄ disagree"),
        );
        r.check("newton-face", data.newton_face == face.vertex_ids, || {
            format!("cone {i} is attached to the wrong face")
        });
    }

    let maximal = fan.fan().maximal();
    for &s in &maximal {
        match fan.facet_signs(s) {
            Ok(signs) => {
                let facets = fan.cone(s).facets();
                let ids: BTreeSet<usize> = signs.iter().map(|x| x.facet).collect();
                r.check(
                    "facet-partition",
                    ids.len() == signs.len() && signs.len() == facets.len(),
                    || format!("cone {s}: {} signed facets of {}", signs.len(), facets.len()),
                );
                for (k, face) in fan.fan().faces_of(s).iter().enumerate() {
                    if *face == s {
                        continue;
                    }
                    let x = fan.cone(*face).relative_interior_point();
                    let covered = signs.iter().any(|sg| fan.cone(sg.facet).contains(&x));
                    r.check("boundary-cover", covered, || {
                        format!("boundary sample {k} of cone {s} lies on no signed facet")
                    });
                }
            }
            Err(e) => r.check("facet-partition", false, || format!("cone {s}: {e}")),
        }
    }
    for (a, &s) in maximal.iter().enumerate() {
        for &t in &maximal[a + 1..] {
            let shared = fan.cone(s).intersection(fan.cone(t)).dim() + 1 == n;
            let (vs, vt) = (p.face(s).vertex_ids[0], p.face(t).vertex_ids[0]);
            let mut pair = vec![vs, vt];
            pair.sort();
            let edge = p.face_id(&pair).is_some_and(|f| p.face(f).dim == 1);
            r.check("edge-facet", shared == edge, || {
                format!("cones {s}, {t}: shared facet {shared}, Newton edge {edge}")
            });
        }
    }

    if let Ok(faces) = fan.wall_faces() {
        let wall = fan.wall_cone().expect("wall exists when its faces do");
        for face in wall.faces() {
            r.check("wall-subfan", fan.fan().index_of(&face).is_some_and(|i| faces.contains(&i)), || {
                format!("face {face:?} of the wall is not a cone of the fan")
            });
        }
    }
    match fan.smallest_cone() {
        Ok(_) => r.check("smallest-cone", true, String::new),
        Err(e) => r.check("smallest-cone", false, || e.to_string()),
    }
    match fan.fan_paths() {
        Ok(cat) => r.check("paths", cat.sides_agree, || "cone and Newton paths disagree".into()),
        Err(e) => r.check("paths", false, || e.to_string()),
    }
    r
}

/// For a direct sum `M ⊕ N`: the Newton polytope is the Minkowski sum, the
/// fan is its normal fan, and each cone refines a cone of each summand.
pub fn verify_direct_sum(m: &Module, n: &Module) -> Result<Report> {
    let mut r = Report::new();
    let sum = m.direct_sum(n)?;
    let (fm, fnn, fs) = (build_mtf_fan(m)?, build_mtf_fan(n)?, build_mtf_fan(&sum)?);
    let mink = minkowski_sum(fm.polytope(), fnn.polytope())?;
    let direct = newton_polytope_of(fs.submodules())?;
    r.check("minkowski", direct == mink, || "Newton polytope of the sum is not the Minkowski sum".into());
    let mink_cones: BTreeSet<Cone> = normal_fan(&mink).fan.cones().iter().cloned().collect();
    let sum_cones: BTreeSet<Cone> = fs.fan().cones().iter().cloned().collect();
    r.check("sum-normal-fan", mink_cones == sum_cones, || {
        "fan of the sum differs from the normal fan of the Minkowski sum".into()
    });
    for (i, c) in fs.fan().cones().iter().enumerate() {
        r.check("refines-first", fm.fan().cones().iter().any(|d| c.is_subset_of(d)), || {
            format!("cone {i} of the sum lies in no cone of the first summand")
        });
        r.check("refines-second", fnn.fan().cones().iter().any(|d| c.is_subset_of(d)), || {
            format!("cone {i} of the sum lies in no cone of the second summand")
        });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn a2_point_checks() {
        let fan = build_mtf_fan(&presets::a2_p1()).unwrap();
        for theta in [[0, 1], [0, 0], [1, -1], [-2, -1], [3, 1]] {
            let r = verify_point(&fan, &StabilityVector::from_ints(&theta));
            assert!(r.is_ok(), "{:?}", r.violations);
        }
    }

    #[test]
    fn a2_fan() {
        let fan = build_mtf_fan(&presets::a2_p1()).unwrap();
        let v = verify_fan(&fan, &SampleSet::default_for(&fan), VerifyOptions::default());
        assert!(v.report.is_ok(), "{:?}", v.report.violations);
        assert_eq!(v.classes_observed, 7);
        assert!(v.pairs_checked > 0);
    }

    #[test]
    fn zero_module() {
        let fan = build_mtf_fan(&Module::zero(presets::a2_algebra())).unwrap();
        let v = verify_fan(&fan, &SampleSet::default_for(&fan), VerifyOptions::default());
        assert!(v.report.is_ok());
        assert_eq!(v.classes_observed, 1);
        assert!(verify_structure(&fan, 2).is_ok());
    }

    #[test]
    fn dims_and_structure() {
        for m in [presets::a2_p1(), presets::a2_s1(), presets::nakayama2_121()] {
            let fan = build_mtf_fan(&m).unwrap();
            let r = verify_dim_formula(&fan);
            assert!(r.is_ok(), "{:?}", r.violations);
            let r = verify_structure(&fan, 3);
            assert!(r.is_ok(), "{:?}", r.violations);
        }
    }

    #[test]
    fn direct_sum() {
        let r = verify_direct_sum(&presets::a2_p1(), &presets::a2_s1()).unwrap();
        assert!(r.is_ok(), "{:?}", r.violations);
    }

    #[test]
    fn samples_are_reproducible() {
        let fan = build_mtf_fan(&presets::nakayama2_121()).unwrap();
        let a = SampleSet::new(&fan, 2, 11);
        let b = SampleSet::new(&fan, 2, 11);
        assert_eq!(a.points, b.points);
        assert!(a.len() > 25);
    }
}
