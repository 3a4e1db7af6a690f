//! Places and the built-in context topologies that interpret them.
//!
//! Linear contexts use token-index coordinates: a word sits at `point(i)` and a
//! phrase covering words `i..=j` at `segment[i, j]`. Scene contexts use scene
//! units with `y` growing upwards.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaceKind {
    Point,
    Segment,
    MultiSegment,
    Line,
    Box,
    Disc,
}

impl PlaceKind {
    pub const ALL: [PlaceKind; 6] = [
        PlaceKind::Point,
        PlaceKind::Segment,
        PlaceKind::MultiSegment,
        PlaceKind::Line,
        PlaceKind::Box,
        PlaceKind::Disc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlaceKind::Point => "point",
            PlaceKind::Segment => "segment",
            PlaceKind::MultiSegment => "multi-segment",
            PlaceKind::Line => "line",
            PlaceKind::Box => "box",
            PlaceKind::Disc => "disc",
        }
    }

    pub fn from_name(name: &str) -> Option<PlaceKind> {
        PlaceKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for PlaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Place {
    Point { x: f64, y: Option<f64> },
    Segment { start: f64, end: f64 },
    MultiSegment { parts: Vec<(f64, f64)> },
    Line { a: (f64, f64), b: (f64, f64) },
    Box { x1: f64, y1: f64, x2: f64, y2: f64 },
    Disc { cx: f64, cy: f64, r: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlaceError {
    #[error("invalid place: {0}")]
    Invalid(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("`{name}` is not defined for places ({kinds})")]
    PlaceKindMismatch { name: String, kinds: String },
    #[error("`{0}` has an empty result")]
    EmptyResult(String),
}

impl Place {
    pub fn point(x: f64) -> Place {
        Place::Point { x, y: None }
    }

    pub fn point2(x: f64, y: f64) -> Place {
        Place::Point { x, y: Some(y) }
    }

    pub fn segment(start: f64, end: f64) -> Result<Place, PlaceError> {
        if start.is_nan() || end.is_nan() || start > end {
            return Err(PlaceError::Invalid(format!("segment [{start}, {end}]")));
        }
        Ok(Place::Segment { start, end })
    }

    /// Normalizes `parts` into a sorted set of disjoint segments.
    pub fn multi_segment(parts: impl IntoIterator<Item = (f64, f64)>) -> Result<Place, PlaceError> {
        let mut parts: Vec<(f64, f64)> = parts.into_iter().collect();
        if parts.is_empty() || parts.iter().any(|(a, b)| a.is_nan() || b.is_nan() || a > b) {
            return Err(PlaceError::Invalid("multi-segment".into()));
        }
        parts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(parts.len());
        for (s, e) in parts {
            match merged.last_mut() {
                Some(last) if s <= last.1 => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }
        Ok(Place::MultiSegment { parts: merged })
    }

    pub fn line(a: (f64, f64), b: (f64, f64)) -> Result<Place, PlaceError> {
        if a == b {
            return Err(PlaceError::Invalid("line anchors must differ".into()));
        }
        Ok(Place::Line { a, b })
    }

    pub fn boxed(x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Place, PlaceError> {
        if !(x1 <= x2 && y1 <= y2) {
            return Err(PlaceError::Invalid(format!("box ({x1}, {y1}, {x2}, {y2})")));
        }
        Ok(Place::Box { x1, y1, x2, y2 })
    }

    pub fn disc(cx: f64, cy: f64, r: f64) -> Result<Place, PlaceError> {
        if !(r > 0.0) {
            return Err(PlaceError::Invalid(format!("disc radius {r}")));
        }
        Ok(Place::Disc { cx, cy, r })
    }

    pub fn kind(&self) -> PlaceKind {
        match self {
            Place::Point { .. } => PlaceKind::Point,
            Place::Segment { .. } => PlaceKind::Segment,
            Place::MultiSegment { .. } => PlaceKind::MultiSegment,
            Place::Line { .. } => PlaceKind::Line,
            Place::Box { .. } => PlaceKind::Box,
            Place::Disc { .. } => PlaceKind::Disc,
        }
    }

    /// Extent along the linear axis.
    pub fn extent(&self) -> Option<(f64, f64)> {
        match self {
            Place::Point { x, .. } => Some((*x, *x)),
            Place::Segment { start, end } => Some((*start, *end)),
            Place::MultiSegment { parts } => Some((parts.first()?.0, parts.last()?.1)),
            _ => None,
        }
    }

    pub fn center(&self) -> Option<(f64, f64)> {
        match self {
            Place::Point { x, y } => Some((*x, y.unwrap_or(0.0))),
            Place::Box { x1, y1, x2, y2 } => Some(((x1 + x2) / 2.0, (y1 + y2) / 2.0)),
            Place::Disc { cx, cy, .. } => Some((*cx, *cy)),
            _ => None,
        }
    }

    pub fn bounding_box(&self) -> Option<(f64, f64, f64, f64)> {
        match self {
            Place::Point { x, y } => Some((*x, y.unwrap_or(0.0), *x, y.unwrap_or(0.0))),
            Place::Box { x1, y1, x2, y2 } => Some((*x1, *y1, *x2, *y2)),
            Place::Disc { cx, cy, r } => Some((cx - r, cy - r, cx + r, cy + r)),
            _ => None,
        }
    }

    pub fn area(&self) -> Option<f64> {
        match self {
            Place::Box { x1, y1, x2, y2 } => Some((x2 - x1) * (y2 - y1)),
            Place::Disc { r, .. } => Some(std::f64::consts::PI * r * r),
            Place::Point { .. } => Some(0.0),
            _ => None,
        }
    }

    /// Box grown by `factor` around its center.
    pub fn inflated(&self, factor: f64) -> Option<Place> {
        let (x1, y1, x2, y2) = self.bounding_box()?;
        let (cx, cy) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let (hw, hh) = ((x2 - x1) / 2.0 * factor, (y2 - y1) / 2.0 * factor);
        Some(Place::Box { x1: cx - hw, y1: cy - hh, x2: cx + hw, y2: cy + hh })
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Point { x, y: None } => write!(f, "point({x})"),
            Place::Point { x, y: Some(y) } => write!(f, "point({x}, {y})"),
            Place::Segment { start, end } => write!(f, "segment[{start}, {end}]"),
            Place::MultiSegment { parts } => {
                f.write_str("multi-segment{")?;
                for (i, (s, e)) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "[{s}, {e}]")?;
                }
                f.write_str("}")
            }
            Place::Line { a, b } => write!(f, "line({}, {}; {}, {})", a.0, a.1, b.0, b.1),
            Place::Box { x1, y1, x2, y2 } => write!(f, "box({x1}, {y1}, {x2}, {y2})"),
            Place::Disc { cx, cy, r } => write!(f, "disc({cx}, {cy}, {r})"),
        }
    }
}

/// The native implementations behind a context's declared relations and operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Topology {
    Linear,
    Scene2D,
    Set,
}

impl Topology {
    /// Name of the built-in context type carrying this topology.
    pub fn context_type(self) -> &'static str {
        match self {
            Topology::Linear => "LinearContext",
            Topology::Scene2D => "SceneContext2D",
            Topology::Set => "SetContext",
        }
    }

    pub const ALL: [Topology; 3] = [Topology::Linear, Topology::Scene2D, Topology::Set];

    pub fn relation_names(self) -> &'static [&'static str] {
        match self {
            Topology::Linear => &["at", "before", "meets", "overlaps"],
            Topology::Scene2D => {
                &["at", "left-of", "right-of", "above", "below", "contains", "overlaps", "on-line"]
            }
            Topology::Set => &["at"],
        }
    }

    pub fn operation_names(self) -> &'static [&'static str] {
        match self {
            Topology::Linear => &["union", "intersection", "span"],
            Topology::Scene2D => &["bounding-box", "center"],
            Topology::Set => &[],
        }
    }

    fn mismatch(name: &str, places: &[Place]) -> PlaceError {
        PlaceError::PlaceKindMismatch {
            name: name.to_string(),
            kinds: places.iter().map(|p| p.kind().name()).collect::<Vec<_>>().join(", "),
        }
    }

    /// Evaluates a relation. Pure in its arguments.
    pub fn relation(self, name: &str, places: &[Place]) -> Result<Value, PlaceError> {
        if !self.relation_names().contains(&name) {
            return Err(PlaceError::UnknownRelation(name.to_string()));
        }
        let mismatch = || Topology::mismatch(name, places);
        if name == "at" {
            let [a, b] = places else { return Err(mismatch()) };
            return Ok(Value::Bool(a == b));
        }
        let holds = match self {
            Topology::Linear => {
                let [a, b] = places else { return Err(mismatch()) };
                let (Some((s1, e1)), Some((s2, e2))) = (a.extent(), b.extent()) else {
                    return Err(mismatch());
                };
                match name {
                    "before" => e1 < s2,
                    "meets" => s2 - e1 == 1.0,
                    "overlaps" => s1.max(s2) <= e1.min(e2),
                    _ => unreachable!(),
                }
            }
            Topology::Scene2D => scene_relation(name, places).ok_or_else(mismatch)?,
            Topology::Set => unreachable!(),
        };
        Ok(Value::Bool(holds))
    }

    /// Evaluates an operation. Pure in its arguments.
    pub fn operation(self, name: &str, places: &[Place]) -> Result<Place, PlaceError> {
        if !self.operation_names().contains(&name) {
            return Err(PlaceError::UnknownOperation(name.to_string()));
        }
        let mismatch = || Topology::mismatch(name, places);
        match (self, name, places) {
            (Topology::Linear, "union", [a, b]) => {
                let parts = |p: &Place| match p {
                    Place::Segment { start, end } => Some(vec![(*start, *end)]),
                    Place::MultiSegment { parts } => Some(parts.clone()),
                    _ => None,
                };
                let (Some(mut pa), Some(pb)) = (parts(a), parts(b)) else { return Err(mismatch()) };
                pa.extend(pb);
                Place::multi_segment(pa)
            }
            (Topology::Linear, "intersection", [Place::Segment { start: s1, end: e1 }, Place::Segment { start: s2, end: e2 }]) => {
                let (s, e) = (s1.max(*s2), e1.min(*e2));
                if s > e {
                    Err(PlaceError::EmptyResult(name.to_string()))
                } else {
                    Place::segment(s, e)
                }
            }
            (Topology::Linear, "span", [a, b]) => {
                let (Some((s1, e1)), Some((s2, e2))) = (a.extent(), b.extent()) else {
                    return Err(mismatch());
                };
                Place::segment(s1.min(s2), e1.max(e2))
            }
            (Topology::Scene2D, "bounding-box", [a, b]) => {
                if !matches!(a.kind(), PlaceKind::Box | PlaceKind::Disc)
                    || !matches!(b.kind(), PlaceKind::Box | PlaceKind::Disc)
                {
                    return Err(mismatch());
                }
                let (a1, b1, c1, d1) = a.bounding_box().ok_or_else(mismatch)?;
                let (a2, b2, c2, d2) = b.bounding_box().ok_or_else(mismatch)?;
                Place::boxed(a1.min(a2), b1.min(b2), c1.max(c2), d1.max(d2))
            }
            (Topology::Scene2D, "center", [a @ (Place::Box { .. } | Place::Disc { .. })]) => {
                let (x, y) = a.center().unwrap();
                Ok(Place::point2(x, y))
            }
            _ => Err(mismatch()),
        }
    }
}

fn scene_relation(name: &str, places: &[Place]) -> Option<bool> {
    if name == "on-line" {
        let [Place::Point { x, y }, Place::Line { a, b }] = places else { return None };
        let y = (*y)?;
        let cross = (b.0 - a.0) * (y - a.1) - (b.1 - a.1) * (x - a.0);
        let scale = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
        return Some((cross / scale).abs() <= 1e-9);
    }
    let [a, b] = places else { return None };
    let solid = |p: &Place| matches!(p.kind(), PlaceKind::Box | PlaceKind::Disc | PlaceKind::Point);
    if !solid(a) || !solid(b) {
        return None;
    }
    let (ax, ay) = a.center()?;
    let (bx, by) = b.center()?;
    Some(match name {
        "left-of" => ax < bx,
        "right-of" => ax > bx,
        "above" => ay > by,
        "below" => ay < by,
        "contains" => {
            let (a1, b1, c1, d1) = a.bounding_box()?;
            let (a2, b2, c2, d2) = b.bounding_box()?;
            a1 <= a2 && b1 <= b2 && c2 <= c1 && d2 <= d1
        }
        "overlaps" => solid_overlap(a, b)?,
        _ => return None,
    })
}

/// Non-empty area intersection.
fn solid_overlap(a: &Place, b: &Place) -> Option<bool> {
    match (a, b) {
        (Place::Disc { cx, cy, r }, Place::Disc { cx: dx, cy: dy, r: s }) => {
            Some(((cx - dx).powi(2) + (cy - dy).powi(2)).sqrt() < r + s)
        }
        (Place::Disc { cx, cy, r }, other) | (other, Place::Disc { cx, cy, r }) => {
            let (x1, y1, x2, y2) = other.bounding_box()?;
            let nx = cx.clamp(x1, x2);
            let ny = cy.clamp(y1, y2);
            Some(((cx - nx).powi(2) + (cy - ny).powi(2)).sqrt() < *r)
        }
        _ => {
            let (a1, b1, c1, d1) = a.bounding_box()?;
            let (a2, b2, c2, d2) = b.bounding_box()?;
            Some(a1.max(a2) < c1.min(c2) && b1.max(b2) < d1.min(d2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: f64, b: f64) -> Place {
        Place::segment(a, b).unwrap()
    }

    #[test]
    fn before_is_strict() {
        let lin = Topology::Linear;
        assert_eq!(lin.relation("before", &[Place::point(2.0), Place::point(5.0)]), Ok(Value::Bool(true)));
        assert_eq!(lin.relation("before", &[Place::point(5.0), Place::point(5.0)]), Ok(Value::Bool(false)));
    }

    #[test]
    fn segment_operations() {
        let lin = Topology::Linear;
        assert_eq!(lin.operation("intersection", &[seg(1.0, 4.0), seg(3.0, 7.0)]), Ok(seg(3.0, 4.0)));
        assert_eq!(
            lin.operation("union", &[seg(1.0, 2.0), seg(4.0, 5.0)]),
            Ok(Place::MultiSegment { parts: vec![(1.0, 2.0), (4.0, 5.0)] })
        );
        assert_eq!(
            lin.operation("intersection", &[seg(1.0, 2.0), seg(4.0, 5.0)]),
            Err(PlaceError::EmptyResult("intersection".into()))
        );
        assert_eq!(lin.operation("span", &[Place::point(1.0), Place::point(3.0)]), Ok(seg(1.0, 3.0)));
    }

    #[test]
    fn scene_left_of_compares_centers() {
        let a = Place::boxed(0.0, 0.0, 10.0, 10.0).unwrap();
        let b = Place::boxed(50.0, 0.0, 60.0, 10.0).unwrap();
        assert_eq!(Topology::Scene2D.relation("left-of", &[a.clone(), b.clone()]), Ok(Value::Bool(true)));
        assert_eq!(Topology::Scene2D.relation("right-of", &[a, b]), Ok(Value::Bool(false)));
    }

    #[test]
    fn disc_box_overlap() {
        let d = Place::disc(0.0, 0.0, 5.0).unwrap();
        let near = Place::boxed(4.0, -1.0, 8.0, 1.0).unwrap();
        let far = Place::boxed(4.0, 4.0, 8.0, 8.0).unwrap();
        assert_eq!(Topology::Scene2D.relation("overlaps", &[d.clone(), near]), Ok(Value::Bool(true)));
        assert_eq!(Topology::Scene2D.relation("overlaps", &[d, far]), Ok(Value::Bool(false)));
    }

    #[test]
    fn invalid_places_are_rejected() {
        assert!(Place::segment(3.0, 1.0).is_err());
        assert!(Place::disc(0.0, 0.0, 0.0).is_err());
        assert!(Place::boxed(5.0, 0.0, 1.0, 1.0).is_err());
        assert!(Place::line((1.0, 1.0), (1.0, 1.0)).is_err());
    }

    #[test]
    fn kind_mismatch() {
        let err = Topology::Linear.relation("before", &[Place::disc(0.0, 0.0, 1.0).unwrap(), Place::point(1.0)]);
        assert!(matches!(err, Err(PlaceError::PlaceKindMismatch { .. })));
    }
}
