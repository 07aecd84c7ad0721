//! Rules shared by several drivers. Each returns `None` when its
//! precondition fails; ties go to the smallest vertex id.

use super::{RuleApplication, RuleId, WorkState};
use crate::instance::Mode;

/// Isolated vertex. Members of X or Y vanish for free; anything else pays
/// one vertex on each side.
pub fn rule_r0_isolated(s: &WorkState) -> Option<RuleApplication> {
    let a = s.vertices().find(|&v| s.degree(v) == 0)?;
    let mut app = RuleApplication::new(RuleId::R0Isolated).note("a", [a]);
    app.removed_vertices.push(a);
    if !s.x.contains(&a) && !s.y.contains(&a) {
        app.unwind.add_d.push(a);
        app.unwind.add_p.push(a);
    }
    Some(app)
}

/// Removes some `a` in X and exempts its neighbours. Plain mode only: under
/// the total and black requirements a neighbour covered by `a` may still
/// need a dominator.
pub fn rule_r1_x_elim(s: &WorkState) -> Option<RuleApplication> {
    if s.mode != Mode::Plain {
        return None;
    }
    let a = *s.x.first()?;
    let mut app = RuleApplication::new(RuleId::R1XElim).note("a", [a]);
    app.removed_vertices.push(a);
    app.y_added = s.neighbors(a).iter().copied().filter(|v| !s.y.contains(v)).collect();
    Some(app)
}

/// Deletes an edge with both ends in Y.
pub fn rule_r2_y_edge(s: &WorkState) -> Option<RuleApplication> {
    let (u, v) = s
        .y
        .iter()
        .flat_map(|&u| s.neighbors(u).range(u + 1..).filter(|w| s.y.contains(w)).map(move |&v| (u, v)))
        .next()?;
    let mut app = RuleApplication::new(RuleId::R2YEdge);
    app.removed_edges.push((u, v));
    Some(app)
}

/// With X empty, a vertex `a` outside Y of degree `1..=c` goes into P and
/// its neighbourhood into X (and later into D).
pub fn rule_r3_low_degree(s: &WorkState, c: usize) -> Option<RuleApplication> {
    if !s.x.is_empty() {
        return None;
    }
    let a = s
        .vertices()
        .filter(|v| !s.y.contains(v))
        .map(|v| (s.degree(v), v))
        .filter(|&(d, _)| (1..=c).contains(&d))
        .min()?
        .1;
    let nb: Vec<usize> = s.neighbors(a).iter().copied().collect();
    let mut app = RuleApplication::new(RuleId::R3LowDegree).note("a", [a]).note("neighborhood", nb.clone());
    app.removed_vertices.push(a);
    app.x_added = nb.clone();
    app.unwind.add_d = nb;
    app.unwind.add_p.push(a);
    Some(app)
}

/// Deletes a member of Y, not in X, with at most one neighbour. Plain mode
/// only: under the total requirement the neighbour could lose its last
/// dominator.
pub fn rule_r4_y_pendant(s: &WorkState) -> Option<RuleApplication> {
    if s.mode != Mode::Plain {
        return None;
    }
    let y = *s.y.iter().find(|&&y| s.degree(y) <= 1 && !s.x.contains(&y))?;
    let mut app = RuleApplication::new(RuleId::R4YPendant).note("y", [y]);
    app.removed_vertices.push(y);
    Some(app)
}
