use std::collections::BTreeSet;

use super::rules::rule_r0_isolated;
use super::{run_driver, ClassTag, Driver, EngineError, EngineFailure, RuleApplication, RuleId, Run, WorkState};
use crate::instance::{Mode, XYInstance};
use crate::ratio::Rational;

/// Plain-mode driver for 2-degenerate graphs with Y kept empty. The budget
/// is `7|P| + 2|X of degree >= 2| + |X of degree 1|`, degrees taken in the
/// current graph.
#[derive(Debug, Default)]
pub struct TwodegDriver;

pub const TWODEG_FACTOR: usize = 7;

/// `2|X^{2+}| + |X^1|` for the state.
pub fn x_weight(s: &WorkState) -> usize {
    s.x.iter().map(|&x| s.degree(x).min(2)).sum()
}

fn outside_x(s: &WorkState, u: usize) -> usize {
    s.neighbors(u).iter().filter(|w| !s.x.contains(w)).count()
}

fn x_neighbors(s: &WorkState, u: usize) -> Vec<usize> {
    s.neighbors(u).iter().copied().filter(|w| s.x.contains(w)).collect()
}

fn non_x(s: &WorkState) -> impl Iterator<Item = usize> + '_ {
    s.vertices().filter(|v| !s.x.contains(v))
}

fn x_edge(s: &WorkState) -> Option<RuleApplication> {
    let (a, b) = s
        .x
        .iter()
        .flat_map(|&a| s.neighbors(a).range(a + 1..).filter(|w| s.x.contains(w)).map(move |&b| (a, b)))
        .next()?;
    let mut app = RuleApplication::new(RuleId::TwodegXEdge);
    app.removed_edges.push((a, b));
    Some(app)
}

fn extra_x_edge(s: &WorkState) -> Option<RuleApplication> {
    let u = non_x(s).find(|&u| x_neighbors(s, u).len() >= 2)?;
    let x1 = x_neighbors(s, u)[0];
    let mut app = RuleApplication::new(RuleId::TwodegExtraXEdge).note("u", [u]).note("x", [x1]);
    app.removed_edges.push((u.min(x1), u.max(x1)));
    Some(app)
}

fn one_outside_with_x(s: &WorkState) -> Option<RuleApplication> {
    let u = non_x(s).find(|&u| outside_x(s, u) <= 1 && !x_neighbors(s, u).is_empty())?;
    let mut app = RuleApplication::new(RuleId::TwodegOneOutsideWithX).note("u", [u]);
    app.removed_vertices.push(u);
    Some(app)
}

fn near_x(s: &WorkState) -> Option<RuleApplication> {
    let closed = s.closed_x();
    let u = non_x(s).find(|&u| {
        closed.contains(&u) && s.neighbors(u).iter().filter(|w| !closed.contains(w)).count() <= 1
    })?;
    let mut app = RuleApplication::new(RuleId::TwodegNearX).note("u", [u]);
    app.removed_vertices.push(u);
    Some(app)
}

fn pendant(s: &WorkState) -> Option<RuleApplication> {
    let u = non_x(s).find(|&u| s.degree(u) == 1 && x_neighbors(s, u).is_empty())?;
    let v = *s.neighbors(u).first().unwrap();
    let mut app = RuleApplication::new(RuleId::TwodegPendant).note("u", [u]).note("v", [v]);
    app.removed_vertices.push(u);
    app.x_added.push(v);
    app.unwind.add_d.push(v);
    app.unwind.add_p.push(u);
    Some(app)
}

fn degree_two(s: &WorkState) -> Option<RuleApplication> {
    let u = non_x(s).find(|&u| s.degree(u) == 2 && x_neighbors(s, u).is_empty())?;
    let nb: Vec<usize> = s.neighbors(u).iter().copied().collect();
    let mut app = RuleApplication::new(RuleId::TwodegDegreeTwo).note("u", [u]).note("neighborhood", nb.clone());
    app.removed_vertices.push(u);
    app.x_added = nb.clone();
    app.unwind.add_d = nb;
    app.unwind.add_p.push(u);
    Some(app)
}

/// Change in `x_weight` when `gone` is deleted, `joined` enters X and
/// `pendants` fresh degree-one vertices enter X.
fn weight_change(s: &WorkState, gone: &BTreeSet<usize>, joined: &[usize], pendants: usize) -> isize {
    let after = |v: usize| (s.degree(v) - s.neighbors(v).intersection(gone).count()).min(2) as isize;
    let kept: isize = s.x.iter().map(|&x| after(x) - s.degree(x).min(2) as isize).sum();
    kept + joined.iter().map(|&w| after(w)).sum::<isize>() + pendants as isize
}

struct Candidate {
    /// Budget left over in the worst case; negative means the step may
    /// overdraw.
    slack: isize,
    order: (usize, usize, usize),
    app: RuleApplication,
}

/// Adjacent `u`, `v` outside X, each with at most one neighbour outside
/// `N[X]` besides the other. Deleting both and paying `u` is sound; the
/// budget is met when the deletion lowers X's weight.
fn single_candidates(s: &WorkState, closed: &BTreeSet<usize>) -> Vec<Candidate> {
    let outer = |a: usize, b: usize| s.neighbors(a).iter().filter(|&&w| w != b && !closed.contains(&w)).count();
    let mut out = Vec::new();
    for u in non_x(s) {
        for &v in s.neighbors(u).iter().filter(|v| !s.x.contains(v)) {
            if outer(u, v) > 1 || outer(v, u) > 1 {
                continue;
            }
            let gone = BTreeSet::from([u, v]);
            let slack = -weight_change(s, &gone, &[], 0) - 1;
            let mut app = RuleApplication::new(RuleId::TwodegMainSingle).note("u", [u]).note("v", [v]);
            app.removed_vertices = vec![u.min(v), u.max(v)];
            app.unwind.add_d.push(u);
            out.push(Candidate { slack, order: (0, u, v), app });
        }
    }
    out
}

/// `u` outside `N[X]` with at most two neighbours `W` outside `N[X]`. `u`
/// and its other neighbours go; `W` joins X and every vertex outside `N[X]`
/// at distance two through a deleted neighbour gets a fresh pendant in X.
fn gadget_candidates(s: &WorkState, closed: &BTreeSet<usize>) -> Vec<Candidate> {
    let mut out = Vec::new();
    for u in s.vertices().filter(|u| !closed.contains(u)) {
        let nb = s.neighbors(u);
        let w: Vec<usize> = nb.iter().copied().filter(|v| !closed.contains(v)).collect();
        if w.len() > 2 {
            continue;
        }
        let near: Vec<usize> = nb.iter().copied().filter(|v| closed.contains(v)).collect();
        let mut targets: Vec<(usize, usize)> = Vec::new();
        for &a in &near {
            for &z in s.neighbors(a) {
                if z != u && !closed.contains(&z) && !w.contains(&z) && !targets.iter().any(|&(t, _)| t == z) {
                    targets.push((z, a));
                }
            }
        }
        targets.sort_unstable();
        let gone: BTreeSet<usize> = std::iter::once(u).chain(near.iter().copied()).collect();
        let change = weight_change(s, &gone, &w, targets.len());
        let worst = (w.len() + targets.len() + usize::from(w.is_empty())) as isize;
        let slack = TWODEG_FACTOR as isize - change - worst;

        let fresh: Vec<usize> = (0..targets.len()).map(|i| s.next_fresh + i).collect();
        let mut app = RuleApplication::new(RuleId::TwodegGadget)
            .note("u", [u])
            .note("w", w.iter().copied())
            .note("removed_neighbors", near.iter().copied())
            .note("pendant_targets", targets.iter().map(|&(z, _)| z))
            .note("pendants", fresh.iter().copied());
        app.removed_vertices = gone.into_iter().collect();
        app.added_vertices = fresh.clone();
        app.added_edges = targets
            .iter()
            .zip(&fresh)
            .map(|(&(z, _), &y)| (z, y, crate::graph::EdgeColor::Black))
            .collect();
        app.x_added = w.iter().copied().chain(fresh.iter().copied()).collect();
        app.unwind.drop_d = fresh;
        app.unwind.add_d = w.clone();
        app.unwind.add_p.push(u);
        app.unwind.repair.push((u, u));
        app.unwind.repair.extend(targets.iter().copied());
        out.push(Candidate { slack, order: (1, u, 0), app });
    }
    out
}

fn main_step(s: &WorkState) -> Option<RuleApplication> {
    let closed = s.closed_x();
    let mut all = single_candidates(s, &closed);
    all.extend(gadget_candidates(s, &closed));
    all.into_iter()
        .min_by_key(|c| (-c.slack, c.order))
        .map(|c| c.app.note("slack", [c.slack.max(0) as usize]))
}

impl Driver for TwodegDriver {
    fn class(&self) -> ClassTag {
        ClassTag::Twodeg
    }
    fn mode(&self) -> Mode {
        Mode::Plain
    }
    fn constant(&self) -> Rational {
        Rational::from_integer(TWODEG_FACTOR as u64)
    }
    fn budget_ok(&self, parent: &WorkState, d: usize, p: usize) -> bool {
        d <= TWODEG_FACTOR * p + x_weight(parent)
    }
    fn step(&mut self, s: &WorkState) -> Result<Option<RuleApplication>, EngineError> {
        Ok(rule_r0_isolated(s)
            .or_else(|| x_edge(s))
            .or_else(|| extra_x_edge(s))
            .or_else(|| one_outside_with_x(s))
            .or_else(|| near_x(s))
            .or_else(|| pendant(s))
            .or_else(|| degree_two(s))
            .or_else(|| main_step(s)))
    }
}

/// Plain-mode witness for a 2-degenerate graph; the instance may carry X
/// but not Y. X's weight is reported as the additive term.
pub fn run_twodeg(inst: &XYInstance) -> Result<Run, EngineFailure> {
    if inst.mode != Mode::Plain {
        return Err(EngineError::NotInClass(format!("2-degenerate driver needs plain mode, got {}", inst.mode)).into());
    }
    if !inst.y.is_empty() {
        return Err(EngineError::NotInClass("2-degenerate driver takes Y = {}".into()).into());
    }
    let degeneracy = inst.graph.degeneracy();
    if degeneracy > 2 {
        return Err(EngineError::NotInClass(format!("degeneracy {degeneracy} exceeds 2")).into());
    }
    let mut run = run_driver(inst, &mut TwodegDriver)?;
    run.witness.additive = x_weight(&run.states[0]) as u64;
    Ok(run)
}
