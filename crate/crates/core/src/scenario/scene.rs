//! Scene files: one colored figure per line.
//!
//! ```text
//! # id shape width height color x y
//! A square 16 16 red 20 50
//! B circle 30 30 red 100 50
//! ```
//!
//! Circles give their diameter as both width and height.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::memory::{BranchState, MemoryError};
use crate::place::{Place, Topology};
use crate::types::TypeHierarchy;
use crate::value::{Filler, InstanceId, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Square,
    Rectangle,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
    Green,
    Black,
    White,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Square => "square",
            Shape::Rectangle => "rectangle",
            Shape::Circle => "circle",
        }
    }

    fn parse(s: &str) -> Option<Shape> {
        [Shape::Square, Shape::Rectangle, Shape::Circle].into_iter().find(|x| x.name() == s)
    }
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Green => "green",
            Color::Black => "black",
            Color::White => "white",
        }
    }

    fn parse(s: &str) -> Option<Color> {
        [Color::Red, Color::Blue, Color::Green, Color::Black, Color::White].into_iter().find(|x| x.name() == s)
    }
}

/// Thirds of the scene's bounding box, by center x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Left,
    Center,
    Right,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Left => "left",
            Region::Center => "center",
            Region::Right => "right",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SceneObject {
    pub id: String,
    pub shape: Shape,
    pub width: f64,
    pub height: f64,
    pub color: Color,
    pub x: f64,
    pub y: f64,
}

impl SceneObject {
    /// A disc for circles, a box otherwise; `(x, y)` is the center.
    pub fn place(&self) -> Place {
        match self.shape {
            Shape::Circle => Place::Disc { cx: self.x, cy: self.y, r: self.width / 2.0 },
            _ => Place::Box {
                x1: self.x - self.width / 2.0,
                y1: self.y - self.height / 2.0,
                x2: self.x + self.width / 2.0,
                y2: self.y + self.height / 2.0,
            },
        }
    }

    pub fn area(&self) -> f64 {
        self.place().area().unwrap_or(0.0)
    }

    pub fn overlaps(&self, other: &Place) -> bool {
        Topology::Scene2D.relation("overlaps", &[self.place(), other.clone()]) == Ok(Value::Bool(true))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Scene {
    pub objects: Vec<SceneObject>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("scene line {line}: {reason}")]
pub struct SceneParseError {
    pub line: usize,
    pub reason: String,
}

fn positive(field: &str, s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("{field} must be a positive number, got `{s}`")),
    }
}

fn finite(field: &str, s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("{field} must be a number, got `{s}`")),
    }
}

fn parse_line(fields: &[&str]) -> Result<SceneObject, String> {
    let [id, shape, w, h, color, x, y] = fields else {
        return Err(format!("expected `id shape width height color x y`, found {} fields", fields.len()));
    };
    let shape = Shape::parse(shape).ok_or_else(|| format!("unknown shape `{shape}`"))?;
    let color = Color::parse(color).ok_or_else(|| format!("unknown color `{color}`"))?;
    let (width, height) = (positive("width", w)?, positive("height", h)?);
    if shape == Shape::Circle && width != height {
        return Err("a circle needs equal width and height".into());
    }
    Ok(SceneObject { id: id.to_string(), shape, width, height, color, x: finite("x", x)?, y: finite("y", y)? })
}

pub fn parse_scene(text: &str) -> Result<Scene, SceneParseError> {
    let mut objects = Vec::new();
    let mut ids = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let obj = parse_line(&fields).map_err(|reason| SceneParseError { line: i + 1, reason })?;
        if !ids.insert(obj.id.clone()) {
            return Err(SceneParseError { line: i + 1, reason: format!("duplicate id `{}`", obj.id) });
        }
        objects.push(obj);
    }
    Ok(Scene { objects })
}

impl Scene {
    pub fn object(&self, id: &str) -> Option<&SceneObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    /// Bounding box of every object.
    pub fn bounds(&self) -> Option<(f64, f64, f64, f64)> {
        self.objects.iter().filter_map(|o| o.place().bounding_box()).reduce(|a, b| {
            (a.0.min(b.0), a.1.min(b.1), a.2.max(b.2), a.3.max(b.3))
        })
    }

    pub fn region_of(&self, o: &SceneObject) -> Region {
        let Some((x1, _, x2, _)) = self.bounds() else { return Region::Center };
        let third = (x2 - x1) / 3.0;
        if o.x < x1 + third {
            Region::Left
        } else if o.x < x1 + 2.0 * third {
            Region::Center
        } else {
            Region::Right
        }
    }
}

/// The scene context and its objects, in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedScene {
    pub context: InstanceId,
    pub objects: Vec<(String, InstanceId)>,
}

impl LoadedScene {
    pub fn instance(&self, id: &str) -> Option<InstanceId> {
        self.objects.iter().find(|(n, _)| n == id).map(|(_, i)| *i)
    }

    pub fn name_of(&self, inst: InstanceId) -> Option<&str> {
        self.objects.iter().find(|(_, i)| *i == inst).map(|(n, _)| n.as_str())
    }
}

/// Adds a `Scene` context with one situated `SceneObject` per figure.
pub fn load_scene(h: &TypeHierarchy, b: &mut BranchState, scene: &Scene) -> Result<LoadedScene, MemoryError> {
    let context = b.create_instance(h, "Scene", [], &[])?;
    let mut objects = Vec::new();
    for o in &scene.objects {
        let atom = |v: Value| Filler::Atom(v);
        let id = b.create_instance(
            h,
            "SceneObject",
            [
                ("name".to_string(), atom(Value::Str(o.id.clone()))),
                ("shape".to_string(), atom(Value::Sym(o.shape.name().into()))),
                ("width".to_string(), atom(Value::Float(o.width))),
                ("height".to_string(), atom(Value::Float(o.height))),
                ("color".to_string(), atom(Value::Sym(o.color.name().into()))),
            ],
            &[],
        )?;
        b.situate(h, id, context, o.place())?;
        objects.push((o.id.clone(), id));
    }
    Ok(LoadedScene { context, objects })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_objects_and_comments() {
        let s = parse_scene("# three figures\nA square 10 10 red 0 0\n\nB circle 4 4 blue 20 0 # round\nC rectangle 30 10 green 40 0\n")
            .unwrap();
        assert_eq!(s.objects.len(), 3);
        assert_eq!(s.objects[1].place(), Place::Disc { cx: 20.0, cy: 0.0, r: 2.0 });
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_scene("A square 10 10 red 0 0\nB square 10 10 purple 5 5").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.reason.contains("purple"));
        assert_eq!(parse_scene("A circle 4 5 red 0 0").unwrap_err().line, 1);
        assert_eq!(parse_scene("A square 0 5 red 0 0").unwrap_err().line, 1);
        assert_eq!(parse_scene("A square 1 5 red 0").unwrap_err().line, 1);
        assert!(parse_scene("A square 1 1 red 0 0\nA square 1 1 red 0 0").is_err());
    }

    #[test]
    fn regions_are_thirds_of_the_bounds() {
        let s = parse_scene("A square 10 10 red 5 0\nB square 10 10 red 50 0\nC square 10 10 red 95 0").unwrap();
        let r: Vec<Region> = s.objects.iter().map(|o| s.region_of(o)).collect();
        assert_eq!(r, [Region::Left, Region::Center, Region::Right]);
    }
}
