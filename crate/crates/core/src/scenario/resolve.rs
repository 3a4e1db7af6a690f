//! Reference resolution by successive sorting steps.
//!
//! Categorical predicates drop candidates; gradable ones reorder the
//! survivors. The margin between the first two candidates after the last
//! gradable step becomes the top candidate's trust.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::registry;
use crate::value::Value;

use super::scene::{Color, Scene, SceneObject, Shape};

/// Growth factor of the box inside which other figures count as neighbours.
pub const NEIGHBOUR_INFLATION: f64 = 1.5;

/// Trust of every candidate but the first, and of the first when nothing separates it.
pub const BASE_TRUST: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Pred {
    Square,
    Red,
    Small,
    OnTheLeft,
}

impl Pred {
    pub fn name(self) -> &'static str {
        match self {
            Pred::Square => "square",
            Pred::Red => "red",
            Pred::Small => "small",
            Pred::OnTheLeft => "on-the-left",
        }
    }

    pub fn from_name(s: &str) -> Option<Pred> {
        [Pred::Square, Pred::Red, Pred::Small, Pred::OnTheLeft].into_iter().find(|p| p.name() == s)
    }

    pub fn is_gradable(self) -> bool {
        matches!(self, Pred::Small | Pred::OnTheLeft)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranked {
    pub object: String,
    /// 1-based.
    pub rank: usize,
    pub trust: f64,
    /// Measure of the last gradable step, if any.
    pub measure: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolution {
    pub ranked: Vec<Ranked>,
    /// Objects removed by a categorical predicate.
    pub dropped: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("no object fits the description")]
    EmptyCandidateSet,
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    match v.len() {
        0 => 0.0,
        n if n % 2 == 1 => v[n / 2],
        n => (v[n / 2 - 1] + v[n / 2]) / 2.0,
    }
}

fn holds(p: Pred, o: &SceneObject) -> bool {
    match p {
        Pred::Square => {
            o.shape != Shape::Circle
                && registry::apply_predicate("approx-square", &[Value::Float(o.width), Value::Float(o.height)]) == Some(true)
        }
        Pred::Red => o.color == Color::Red,
        Pred::Small | Pred::OnTheLeft => true,
    }
}

/// Area relative to the median area of the survivors and of any other
/// figure close enough to be compared with.
pub fn small_measure(scene: &Scene, cand: &SceneObject, survivors: &[&SceneObject]) -> f64 {
    let zone = cand.place().inflated(NEIGHBOUR_INFLATION);
    let mut areas: Vec<f64> = survivors.iter().map(|o| o.area()).collect();
    for o in &scene.objects {
        let survivor = survivors.iter().any(|s| s.id == o.id);
        if !survivor && zone.as_ref().is_some_and(|z| o.overlaps(z)) {
            areas.push(o.area());
        }
    }
    let m = median(&areas);
    if m > 0.0 {
        cand.area() / m
    } else {
        0.0
    }
}

fn measure(p: Pred, scene: &Scene, o: &SceneObject, survivors: &[&SceneObject]) -> f64 {
    match p {
        Pred::Small => small_measure(scene, o, survivors),
        _ => o.x,
    }
}

/// Maps the gap between the two best measures into `[0.5, 1]`.
pub fn top_trust(measures: &[f64]) -> f64 {
    if measures.len() < 2 {
        return 1.0;
    }
    let gap = measures[1] - measures[0];
    let eps = median(measures);
    let x = if gap + eps > 0.0 { gap / (gap + eps) } else { 0.0 };
    BASE_TRUST + (1.0 - BASE_TRUST) * x.clamp(0.0, 1.0)
}

/// Runs the sorting steps in order. Ties keep ascending object id.
pub fn resolve_referents(scene: &Scene, preds: &[Pred]) -> Result<Resolution, ResolveError> {
    let mut order: Vec<&SceneObject> = scene.objects.iter().collect();
    order.sort_by(|a, b| a.id.cmp(&b.id));
    let mut dropped = Vec::new();
    let mut measures: Option<Vec<f64>> = None;
    for &p in preds {
        if p.is_gradable() {
            let snapshot = order.clone();
            let mut scored: Vec<(&SceneObject, f64)> =
                order.iter().map(|o| (*o, measure(p, scene, o, &snapshot))).collect();
            scored.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal));
            order = scored.iter().map(|(o, _)| *o).collect();
            measures = Some(scored.iter().map(|(_, m)| *m).collect());
        } else {
            let keep: Vec<bool> = order.iter().map(|o| holds(p, o)).collect();
            if let Some(ms) = &mut measures {
                *ms = ms.iter().zip(&keep).filter(|(_, k)| **k).map(|(m, _)| *m).collect();
            }
            dropped.extend(order.iter().zip(&keep).filter(|(_, k)| !**k).map(|(o, _)| o.id.clone()));
            order = order.into_iter().zip(keep).filter(|(_, k)| *k).map(|(o, _)| o).collect();
        }
    }
    if order.is_empty() {
        return Err(ResolveError::EmptyCandidateSet);
    }
    let first = match (&measures, order.len()) {
        (_, 1) => 1.0,
        (Some(ms), _) => top_trust(ms),
        (None, _) => BASE_TRUST,
    };
    let ranked = order
        .iter()
        .enumerate()
        .map(|(i, o)| Ranked {
            object: o.id.clone(),
            rank: i + 1,
            trust: if i == 0 { first } else { BASE_TRUST },
            measure: measures.as_ref().map(|m| m[i]),
        })
        .collect();
    Ok(Resolution { ranked, dropped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::scene::parse_scene;

    fn ids(r: &Resolution) -> Vec<&str> {
        r.ranked.iter().map(|c| c.object.as_str()).collect()
    }

    #[test]
    fn categorical_steps_drop() {
        let s = parse_scene("A square 10 10 red 0 0\nB circle 10 10 red 20 0\nC square 10 10 blue 40 0\nD rectangle 30 10 red 60 0")
            .unwrap();
        let r = resolve_referents(&s, &[Pred::Square, Pred::Red]).unwrap();
        assert_eq!(ids(&r), ["A"]);
        assert_eq!(r.ranked[0].trust, 1.0);
        assert_eq!(r.dropped, ["B", "D", "C"]);
        assert_eq!(resolve_referents(&s, &[Pred::Square, Pred::Red, Pred::Small]).unwrap().ranked.len(), 1);
        let none = parse_scene("A circle 10 10 blue 0 0").unwrap();
        assert_eq!(resolve_referents(&none, &[Pred::Square]), Err(ResolveError::EmptyCandidateSet));
    }

    #[test]
    fn last_gradable_decides() {
        let s = parse_scene("C square 40 40 red 100 50\nR square 24 24 red 170 50").unwrap();
        let small = resolve_referents(&s, &[Pred::Square, Pred::Small]).unwrap();
        assert_eq!(ids(&small), ["R", "C"]);
        let left = resolve_referents(&s, &[Pred::Square, Pred::Small, Pred::OnTheLeft]).unwrap();
        assert_eq!(ids(&left), ["C", "R"]);
    }

    #[test]
    fn trust_follows_the_gap() {
        // Measures 100 and 170: gap 70, median 135.
        let expected = 0.5 + 0.5 * 70.0 / (70.0 + 135.0);
        assert!((top_trust(&[100.0, 170.0]) - expected).abs() < 1e-12);
        assert_eq!(top_trust(&[3.0, 3.0]), 0.5);
        assert_eq!(top_trust(&[3.0]), 1.0);
    }
}
