use std::collections::BTreeSet;

use super::rules::*;
use super::{run_driver, ClassTag, Driver, EngineError, EngineFailure, RuleApplication, RuleId, Run, WorkState};
use crate::families::{check_tw_certificate, simplicial_vertices};
use crate::graph::{Graph, VertexSet};
use crate::instance::{Mode, XYInstance};
use crate::ratio::Rational;

/// Drives a graph of treewidth at most `k` using a chordal completion of
/// clique number at most `k + 1`. The completion is restricted to the live
/// vertices at every step; vertex deletion keeps it chordal.
#[derive(Debug)]
pub struct TreewidthDriver {
    completion: Graph,
    k: usize,
}

impl TreewidthDriver {
    pub fn new(completion: Graph, k: usize) -> Self {
        TreewidthDriver { completion, k }
    }

    /// Peels simplicial vertices of the completion that lie in Y, level by
    /// level, until some level offers a simplicial vertex outside Y. Returns
    /// that vertex and the peeled set.
    fn pick(&self, s: &WorkState) -> Option<(usize, BTreeSet<usize>)> {
        let h = &self.completion;
        let mut alive = VertexSet::from_iter(h.n(), s.vertices());
        let mut peeled = BTreeSet::new();
        while !alive.is_empty() {
            let simplicial = simplicial_vertices(h, &alive);
            if let Some(v) = simplicial.iter().find(|v| !s.y.contains(v)) {
                return Some((v, peeled));
            }
            for v in simplicial.iter() {
                peeled.insert(v);
                alive.remove(v);
            }
        }
        None
    }

    fn class_step(&self, s: &WorkState) -> Option<RuleApplication> {
        let (v, peeled) = self.pick(s)?;
        let nb = s.neighbors(v);
        let clique: Vec<usize> = self
            .completion
            .neighbors(v)
            .iter()
            .filter(|c| s.graph.contains(*c) && !peeled.contains(c))
            .collect();
        let c1: Vec<usize> = clique.iter().copied().filter(|c| nb.contains(c)).collect();
        let mut c2 = Vec::new();
        let mut c2_prime = BTreeSet::new();
        for &c in clique.iter().filter(|c| !nb.contains(c)) {
            if let Some(&w) = s.neighbors(c).iter().find(|w| nb.contains(w)) {
                c2.push(c);
                if !s.y.contains(&c) {
                    c2_prime.insert(w);
                }
            }
        }
        let mut app = RuleApplication::new(RuleId::TreewidthClassStep)
            .note("v", [v])
            .note("c", clique.iter().copied())
            .note("c1", c1.iter().copied())
            .note("c2", c2.iter().copied())
            .note("c2_prime", c2_prime.iter().copied());
        app.removed_vertices.push(v);
        app.x_added = c1.clone();
        app.y_added = c2.iter().copied().filter(|c| !s.y.contains(c)).collect();
        let mut add: BTreeSet<usize> = c1.into_iter().chain(c2_prime).collect();
        if add.is_empty() {
            add.insert(v);
        }
        app.unwind.add_d = add.into_iter().collect();
        app.unwind.add_p.push(v);
        Some(app)
    }
}

impl Driver for TreewidthDriver {
    fn class(&self) -> ClassTag {
        ClassTag::Treewidth
    }
    fn mode(&self) -> Mode {
        Mode::Plain
    }
    fn constant(&self) -> Rational {
        Rational::from_integer(self.k as u64)
    }
    fn step(&mut self, s: &WorkState) -> Result<Option<RuleApplication>, EngineError> {
        Ok(rule_r0_isolated(s)
            .or_else(|| rule_r4_y_pendant(s))
            .or_else(|| rule_r2_y_edge(s))
            .or_else(|| rule_r1_x_elim(s))
            .or_else(|| rule_r3_low_degree(s, self.k))
            .or_else(|| self.class_step(s)))
    }
}

pub fn run_treewidth(inst: &XYInstance, completion: &Graph, k: usize) -> Result<Run, EngineFailure> {
    if inst.mode != Mode::Plain {
        return Err(EngineError::NotInClass(format!("treewidth driver needs plain mode, got {}", inst.mode)).into());
    }
    if k == 0 {
        return Err(EngineError::CertificateInvalid("width must be at least 1".into()).into());
    }
    check_tw_certificate(&inst.graph, completion, k).map_err(EngineError::CertificateInvalid)?;
    run_driver(inst, &mut TreewidthDriver::new(completion.clone(), k))
}
