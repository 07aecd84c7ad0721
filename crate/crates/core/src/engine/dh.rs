use super::rules::rule_r0_isolated;
use super::{run_driver, ClassTag, Driver, EngineError, EngineFailure, RuleApplication, RuleId, Run, WorkState};
use crate::families::recognize_distance_hereditary;
use crate::instance::{Mode, XYInstance};
use crate::ratio::Rational;

/// Total domination on distance-hereditary graphs. X stays empty: a pendant
/// and its neighbour are removed together, which avoids eliminating X under
/// the total requirement.
#[derive(Debug, Default)]
pub struct DistanceHereditaryDriver;

/// Deleting `v` must not leave a neighbour outside Y without neighbours.
fn deletion_keeps_neighbours(s: &WorkState, v: usize) -> bool {
    s.neighbors(v).iter().all(|&w| s.y.contains(&w) || s.degree(w) > 1)
}

fn y_prune(s: &WorkState) -> Option<RuleApplication> {
    let y = *s.y.iter().find(|&&y| {
        s.neighbors(y).iter().filter(|w| !s.y.contains(w)).count() <= 1 && deletion_keeps_neighbours(s, y)
    })?;
    let mut app = RuleApplication::new(RuleId::DhYPrune).note("y", [y]);
    app.removed_vertices.push(y);
    Some(app)
}

/// `u` and `v` with equal neighbourhoods apart from each other. Deletes the
/// Y member if any, else the larger id.
fn twins(s: &WorkState) -> Option<RuleApplication> {
    let ids: Vec<usize> = s.vertices().collect();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            let (nu, nv) = (s.neighbors(u), s.neighbors(v));
            if nu.len() != nv.len() || nu.iter().any(|&w| w != v && !nv.contains(&w)) {
                continue;
            }
            let gone = if s.y.contains(&u) { u } else { v };
            let kept = if gone == u { v } else { u };
            if s.has_edge(u, v) && s.degree(kept) == 1 && !s.y.contains(&kept) {
                continue;
            }
            let mut app = RuleApplication::new(RuleId::DhTwin).note("twins", [u, v]).note("removed", [gone]);
            app.removed_vertices.push(gone);
            return Some(app);
        }
    }
    None
}

/// Pendant `u` outside Y with neighbour `v`: both go to D, `u` to P, and
/// the rest of `N(v)` becomes exempt.
fn pendant(s: &WorkState) -> Option<RuleApplication> {
    let u = s.vertices().find(|&u| !s.y.contains(&u) && s.degree(u) == 1)?;
    let v = *s.neighbors(u).first().unwrap();
    let mut app = RuleApplication::new(RuleId::DhPendant).note("u", [u]).note("v", [v]);
    app.removed_vertices = vec![u, v];
    app.y_added = s.neighbors(v).iter().copied().filter(|&w| w != u && !s.y.contains(&w)).collect();
    app.unwind.add_d = vec![u, v];
    app.unwind.add_p = vec![u];
    Some(app)
}

impl Driver for DistanceHereditaryDriver {
    fn class(&self) -> ClassTag {
        ClassTag::Dh
    }
    fn mode(&self) -> Mode {
        Mode::Total
    }
    fn constant(&self) -> Rational {
        Rational::from_integer(2)
    }
    fn step(&mut self, s: &WorkState) -> Result<Option<RuleApplication>, EngineError> {
        Ok(rule_r0_isolated(s).or_else(|| y_prune(s)).or_else(|| twins(s)).or_else(|| pendant(s)))
    }
}

/// Total-mode witness. The instance must have an empty X.
pub fn run_distance_hereditary(inst: &XYInstance) -> Result<Run, EngineFailure> {
    if inst.mode != Mode::Total {
        return Err(EngineError::NotInClass(format!("distance-hereditary driver needs total mode, got {}", inst.mode)).into());
    }
    if !inst.x.is_empty() {
        return Err(EngineError::NotInClass("distance-hereditary driver takes X = {}".into()).into());
    }
    if !recognize_distance_hereditary(&inst.graph) {
        return Err(EngineError::NotInClass("graph is not distance-hereditary".into()).into());
    }
    run_driver(inst, &mut DistanceHereditaryDriver)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_cycle, gen_random_distance_hereditary, gen_random_tree};
    use crate::graph::Graph;
    use crate::oracles::exact_domination;

    fn total(g: Graph) -> XYInstance {
        XYInstance::with_mode(g, Mode::Total)
    }

    #[test]
    fn four_cycle_is_tight() {
        let inst = total(gen_cycle(4));
        let w = run_distance_hereditary(&inst).unwrap().witness;
        assert!(w.check(&inst).is_ok());
        assert_eq!(exact_domination(&inst).unwrap().value, 2);
        assert!(w.d.len() <= 2 * w.p.len());
    }

    #[test]
    fn trees_and_random() {
        for seed in 0..40 {
            for g in [gen_random_tree(14, seed), gen_random_distance_hereditary(14, seed)] {
                let inst = total(g);
                let w = run_distance_hereditary(&inst).unwrap().witness;
                assert!(w.check(&inst).is_ok(), "seed {seed}");
            }
        }
    }

    #[test]
    fn single_vertex() {
        let w = run_distance_hereditary(&total(Graph::empty(1))).unwrap().witness;
        assert_eq!((w.d.clone(), w.p.clone()), (vec![0], vec![0]));
        let inst = XYInstance::from_ids(Graph::empty(1), &[], &[0], Mode::Total).unwrap();
        let w = run_distance_hereditary(&inst).unwrap().witness;
        assert!(w.d.is_empty() && w.p.is_empty());
    }

    #[test]
    fn rejects_outside_class() {
        let err = run_distance_hereditary(&total(gen_cycle(5))).unwrap_err();
        assert!(matches!(err.error, EngineError::NotInClass(_)));
    }
}
