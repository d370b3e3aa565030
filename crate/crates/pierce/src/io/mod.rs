//! Instance files, certified generators, run reports and SVG rendering.

pub mod generate;
pub mod instance;
pub mod report;
pub mod svg;

pub use generate::{generate, GenError, GenKind, MAX_ATTEMPTS};
pub use instance::{
    parse_instance, serialize_instance, FamilyRecord, InstanceError, InstanceFile, ShapeRecord,
    DISK_POLYGON_SIDES, FORMAT_VERSION, MAX_FAMILIES,
};
pub use report::{certificate_from_json, report_is_consistent, run_solve, RunOutcome, RunReport};
pub use svg::{render_svg, Overlay};
