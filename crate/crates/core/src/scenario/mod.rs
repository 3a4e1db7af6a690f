//! The bundled demonstrations: scenes, the imperative grammar and the
//! counting model.

pub mod counting;
pub mod interpret;
pub mod resolve;
pub mod scene;
pub mod utterance;

pub use counting::{count_trace, counting_state};
pub use interpret::{analyse, interpret, Analysis, InterpretError, Interpretation};
pub use resolve::{resolve_referents, Pred, Ranked, Resolution, ResolveError};
pub use scene::{load_scene, parse_scene, Scene, SceneObject, SceneParseError};
pub use utterance::{lay_out_utterance, LayoutError, LEXICON};

use crate::validate::{load_program, CompiledProgram, ProgramError};

pub const DEMO_GRAMMAR: &str = include_str!("../../data/demo.scim");
pub const COUNT_GRAMMAR: &str = include_str!("../../data/count.scim");
/// Every declaration block and constraint form in one valid program.
pub const FORMALISM_TOUR: &str = include_str!("../../data/formalisms.scim");
pub const SITUATION_1: &str = include_str!("../../data/sit1.scene");
pub const SITUATION_2: &str = include_str!("../../data/sit2.scene");
pub const SITUATION_3: &str = include_str!("../../data/sit3.scene");
pub const SITUATION_3_NO_CIRCLES: &str = include_str!("../../data/sit3_no_circles.scene");

pub fn demo_program() -> Result<CompiledProgram, ProgramError> {
    load_program(&[DEMO_GRAMMAR])
}

pub fn count_program() -> Result<CompiledProgram, ProgramError> {
    load_program(&[COUNT_GRAMMAR])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_grammars_validate() {
        if let Err(e) = demo_program() {
            panic!("{e:?}");
        }
        if let Err(e) = count_program() {
            panic!("{e:?}");
        }
    }
}
