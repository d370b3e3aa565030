use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geom::{convex_hull, ConvexBody, Point};

pub const FORMAT_VERSION: u32 = 1;
/// Disks become regular polygons with this many sides, at the average of the
/// inscribed and circumscribed radii (max radius error about 0.06%).
pub const DISK_POLYGON_SIDES: usize = 64;
pub const MAX_FAMILIES: usize = 6;

/// On-disk instance: up to six named families of shapes plus free-form
/// metadata. Parsing round-trips and every shape converts to a valid body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    pub families: Vec<FamilyRecord>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub name: String,
    pub shapes: Vec<ShapeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeRecord {
    Polygon { vertices: Vec<[f64; 2]> },
    Disk { center: [f64; 2], radius: f64 },
    Points { points: Vec<[f64; 2]> },
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum InstanceError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown shape kind: {message}")]
    UnknownShapeKind { message: String },
    #[error("schema error: {message}")]
    Schema { message: String },
    #[error("unsupported format version {got} (expected {FORMAT_VERSION})")]
    BadVersion { got: u32 },
    #[error("instance has no families")]
    NoFamilies,
    #[error("too many families: {got} (at most {MAX_FAMILIES})")]
    TooManyFamilies { got: usize },
    #[error("family {family} ({name:?}) has no shapes")]
    EmptyFamily { family: usize, name: String },
    #[error("family {family}, shape {shape}: fewer than 1 vertex")]
    EmptyShape { family: usize, shape: usize },
    #[error("family {family}, shape {shape}: non-finite number")]
    NonFinite { family: usize, shape: usize },
    #[error("family {family}, shape {shape}: negative radius")]
    BadRadius { family: usize, shape: usize },
}

/// Parses and validates an instance from JSON text.
pub fn parse_instance(text: &str) -> Result<InstanceFile, InstanceError> {
    let instance: InstanceFile = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        if e.is_syntax() || e.is_eof() {
            InstanceError::Json {
                line: e.line(),
                column: e.column(),
                message,
            }
        } else if message.contains("unknown variant") {
            InstanceError::UnknownShapeKind { message }
        } else {
            InstanceError::Schema { message }
        }
    })?;
    validate(&instance)?;
    Ok(instance)
}

/// Canonical serialization (pretty JSON with a trailing newline).
pub fn serialize_instance(instance: &InstanceFile) -> String {
    let mut s = serde_json::to_string_pretty(instance).expect("instance serializes");
    s.push('\n');
    s
}

fn validate(instance: &InstanceFile) -> Result<(), InstanceError> {
    if instance.version != FORMAT_VERSION {
        return Err(InstanceError::BadVersion {
            got: instance.version,
        });
    }
    if instance.families.is_empty() {
        return Err(InstanceError::NoFamilies);
    }
    if instance.families.len() > MAX_FAMILIES {
        return Err(InstanceError::TooManyFamilies {
            got: instance.families.len(),
        });
    }
    for (fi, family) in instance.families.iter().enumerate() {
        if family.shapes.is_empty() {
            return Err(InstanceError::EmptyFamily {
                family: fi,
                name: family.name.clone(),
            });
        }
        for (si, shape) in family.shapes.iter().enumerate() {
            let coords: Vec<[f64; 2]> = match shape {
                ShapeRecord::Polygon { vertices } => vertices.clone(),
                ShapeRecord::Points { points } => points.clone(),
                ShapeRecord::Disk { center, radius } => {
                    if !radius.is_finite() || !center.iter().all(|c| c.is_finite()) {
                        return Err(InstanceError::NonFinite {
                            family: fi,
                            shape: si,
                        });
                    }
                    if *radius < 0.0 {
                        return Err(InstanceError::BadRadius {
                            family: fi,
                            shape: si,
                        });
                    }
                    continue;
                }
            };
            if coords.is_empty() {
                return Err(InstanceError::EmptyShape {
                    family: fi,
                    shape: si,
                });
            }
            if coords.iter().any(|c| c.iter().any(|x| !x.is_finite())) {
                return Err(InstanceError::NonFinite {
                    family: fi,
                    shape: si,
                });
            }
        }
    }
    Ok(())
}

impl InstanceFile {
    pub fn new(families: Vec<FamilyRecord>) -> InstanceFile {
        InstanceFile {
            version: FORMAT_VERSION,
            families,
            metadata: BTreeMap::new(),
        }
    }

    /// Converts every shape into a canonical convex body: polygons and point
    /// clouds take their hull, disks become regular 64-gons.
    pub fn to_families(&self) -> Vec<Vec<ConvexBody>> {
        self.families
            .iter()
            .map(|family| family.shapes.iter().map(shape_to_body).collect())
            .collect()
    }

    /// All bodies flattened into a single family, in file order.
    pub fn flatten(&self) -> Vec<ConvexBody> {
        self.to_families().into_iter().flatten().collect()
    }

    pub fn body_counts(&self) -> Vec<usize> {
        self.families.iter().map(|f| f.shapes.len()).collect()
    }
}

fn shape_to_body(shape: &ShapeRecord) -> ConvexBody {
    match shape {
        ShapeRecord::Polygon { vertices } => {
            let pts: Vec<Point> = vertices.iter().map(|c| Point::new(c[0], c[1])).collect();
            convex_hull(&pts).expect("validated polygon")
        }
        ShapeRecord::Points { points } => {
            let pts: Vec<Point> = points.iter().map(|c| Point::new(c[0], c[1])).collect();
            convex_hull(&pts).expect("validated point cloud")
        }
        ShapeRecord::Disk { center, radius } => {
            let r = radius * (1.0 + 1.0 / (PI / DISK_POLYGON_SIDES as f64).cos()) / 2.0;
            let pts: Vec<Point> = (0..DISK_POLYGON_SIDES)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / DISK_POLYGON_SIDES as f64;
                    Point::new(center[0] + r * t.cos(), center[1] + r * t.sin())
                })
                .collect();
            convex_hull(&pts).expect("disk polygon")
        }
    }
}

/// Builds polygon records from bodies (the inverse of `to_families` up to
/// hull canonicalization).
pub fn family_record(name: &str, bodies: &[ConvexBody]) -> FamilyRecord {
    FamilyRecord {
        name: name.to_string(),
        shapes: bodies
            .iter()
            .map(|b| ShapeRecord::Polygon {
                vertices: b.vertices().iter().map(|v| [v.x, v.y]).collect(),
            })
            .collect(),
    }
}
