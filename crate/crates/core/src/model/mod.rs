mod profile;
mod sod;
mod term;
mod workspace;

pub use profile::{LefschetzProfile, Moderation};
pub use sod::{sod_equal, twist_sod, SodBlock, SodExpr};
pub use term::{BaseTag, CategoryTerm};
pub use workspace::{CheckSpec, Workspace};
