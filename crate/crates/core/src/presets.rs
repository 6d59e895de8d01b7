//! Built-in example modules.
//!
//! | name            | p | algebra                            | module          |
//! |-----------------|---|------------------------------------|-----------------|
//! | `a2-P1`         | 2 | `1 -> 2`                           | `P(1) = 1 / 2`  |
//! | `a2-S1`         | 2 | `1 -> 2`                           | `S(1)`          |
//! | `nakayama2-121` | 2 | `1 <-> 2` modulo `aba`, `bab`      | `1 / 2 / 1`     |
//! | `square-lambda` | 3 | square `1->2->4`, `1->3->4`        | all `k`, λ = 2  |

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::input::Document;
use crate::quiver::{BoundQuiverAlgebra, Module};

pub const PRESET_NAMES: [&str; 4] = ["a2-P1", "a2-S1", "nakayama2-121", "square-lambda"];

const A2_P1: &str = include_str!("../presets/a2-P1.json");
const A2_S1: &str = include_str!("../presets/a2-S1.json");
const NAKAYAMA2_121: &str = include_str!("../presets/nakayama2-121.json");
const SQUARE_LAMBDA: &str = include_str!("../presets/square-lambda.json");

/// The JSON document of a preset.
pub fn preset_document(name: &str) -> Result<&'static str> {
    Ok(match name {
        "a2-P1" => A2_P1,
        "a2-S1" => A2_S1,
        "nakayama2-121" => NAKAYAMA2_121,
        "square-lambda" => SQUARE_LAMBDA,
        _ => return Err(Error::UnknownPreset(name.to_string())),
    })
}

pub fn preset(name: &str) -> Result<Module> {
    Document::parse(preset_document(name)?)?.build()
}

fn builtin(name: &str) -> Module {
    preset(name).expect("built-in preset is valid")
}

pub fn a2_p1() -> Module {
    builtin("a2-P1")
}

pub fn a2_s1() -> Module {
    builtin("a2-S1")
}

pub fn nakayama2_121() -> Module {
    builtin("nakayama2-121")
}

pub fn square_lambda() -> Module {
    builtin("square-lambda")
}

pub fn a2_algebra() -> Arc<BoundQuiverAlgebra> {
    a2_p1().algebra().clone()
}

pub fn nakayama2_algebra() -> Arc<BoundQuiverAlgebra> {
    nakayama2_121().algebra().clone()
}

pub fn square_algebra() -> Arc<BoundQuiverAlgebra> {
    square_lambda().algebra().clone()
}
