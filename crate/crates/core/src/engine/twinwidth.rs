use std::collections::{BTreeMap, BTreeSet};

use super::rules::rule_r0_isolated;
use super::{run_driver, ClassTag, Driver, EngineError, EngineFailure, RuleApplication, RuleId, Run, WorkState};
use crate::families::{check_contraction_sequence, ContractionSequence};
use crate::instance::{Mode, XYInstance};
use crate::ratio::Rational;

/// Black-mode driver following a contraction sequence of width `k`.
///
/// The live state is always a sub-trigraph of the sequence's current
/// trigraph whose red edges are red there too, so red degrees stay at most
/// `k`. Merges whose parts were already deleted only update the id map.
#[derive(Debug)]
pub struct TwinwidthDriver {
    seq: ContractionSequence,
    k: usize,
    cursor: usize,
    /// Sequence id to live state id; `None` once deleted.
    alias: BTreeMap<usize, Option<usize>>,
}

impl TwinwidthDriver {
    pub fn new(n: usize, seq: ContractionSequence, k: usize) -> Self {
        let alias = (0..n).map(|v| (v, Some(v))).collect();
        TwinwidthDriver { seq, k, cursor: 0, alias }
    }

    fn live(&self, s: &WorkState, id: usize) -> Option<usize> {
        self.alias.get(&id).copied().flatten().filter(|&v| s.graph.contains(v))
    }

    fn black_or_self(s: &WorkState, v: usize) -> usize {
        s.black_neighbors(v).first().copied().unwrap_or(v)
    }

    fn claim(&self, s: &WorkState) -> Option<RuleApplication> {
        let u = s
            .vertices()
            .filter(|v| !s.y.contains(v))
            .map(|v| (s.black_neighbors(v).len(), v))
            .filter(|&(b, _)| b <= self.k)
            .min()?
            .1;
        let black = s.black_neighbors(u);
        let red: BTreeSet<usize> = s.neighbors(u).difference(&black).copied().collect();
        let second = s.second_neighborhood(u);
        let mut app = RuleApplication::new(RuleId::TwinwidthClaim)
            .note("u", [u])
            .note("black", black.iter().copied())
            .note("red", red.iter().copied())
            .note("second", second.iter().copied());
        app.removed_vertices = std::iter::once(u).chain(s.neighbors(u).iter().copied()).collect();
        app.y_added = second.iter().copied().filter(|v| !s.y.contains(v)).collect();
        app.unwind.add_d = s.neighbors(u).iter().copied().collect();
        app.unwind.add_p.push(u);
        let open = |v: &&usize| !s.y.contains(*v);
        app.unwind.repair.extend(black.iter().filter(open).map(|&b| (b, u)));
        app.unwind.repair.extend(red.iter().filter(open).map(|&r| (r, Self::black_or_self(s, r))));
        app.unwind.repair.extend(second.iter().filter(open).map(|&v| (v, Self::black_or_self(s, v))));
        Some(app)
    }

    fn contract(&mut self, s: &WorkState) -> Option<RuleApplication> {
        while let Some(&(su, sv, sw)) = self.seq.merges.get(self.cursor) {
            self.cursor += 1;
            let (a, b) = (self.live(s, su), self.live(s, sv));
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                (one, other) => {
                    self.alias.insert(sw, one.or(other));
                    continue;
                }
            };
            // `keep` is the side outside Y when there is one
            let (keep, other) = if s.y.contains(&a) && !s.y.contains(&b) { (b, a) } else { (a, b) };
            let w = s.next_fresh;
            self.alias.insert(sw, Some(w));
            let mut app = RuleApplication::new(RuleId::TwinwidthContract).note("pair", [keep, other]).note("merged", [w]);
            app.removed_vertices = vec![a, b];
            app.added_vertices = vec![w];
            app.added_edges = s.graph.merged_edges(a, b).into_iter().map(|(x, c)| (w, x, c)).collect();
            if s.y.contains(&a) && s.y.contains(&b) {
                app.y_added.push(w);
            }
            app.unwind.rename.push((w, keep));
            for v in [keep, other] {
                if !s.y.contains(&v) {
                    app.unwind.repair.push((v, Self::black_or_self(s, v)));
                }
            }
            return Some(app);
        }
        None
    }
}

impl Driver for TwinwidthDriver {
    fn class(&self) -> ClassTag {
        ClassTag::Twinwidth
    }
    fn mode(&self) -> Mode {
        Mode::Black
    }
    fn constant(&self) -> Rational {
        Rational::from_integer(4 * (self.k * self.k) as u64)
    }
    fn step(&mut self, s: &WorkState) -> Result<Option<RuleApplication>, EngineError> {
        if let Some(app) = rule_r0_isolated(s).or_else(|| self.claim(s)) {
            return Ok(Some(app));
        }
        Ok(self.contract(s))
    }
}

/// Black-mode witness from a contraction sequence. Widths below 2 are
/// rejected; X must be empty.
pub fn run_twinwidth(inst: &XYInstance, seq: &ContractionSequence, k: usize) -> Result<Run, EngineFailure> {
    if inst.mode != Mode::Black {
        return Err(EngineError::NotInClass(format!("twin-width driver needs black mode, got {}", inst.mode)).into());
    }
    if !inst.x.is_empty() {
        return Err(EngineError::NotInClass("twin-width driver takes X = {}".into()).into());
    }
    if k < 2 {
        return Err(EngineError::SequenceInvalid(format!("width {k} is below 2")).into());
    }
    if seq.declared_width > k {
        return Err(EngineError::SequenceInvalid(format!("declared width {} exceeds {k}", seq.declared_width)).into());
    }
    let widened = ContractionSequence { merges: seq.merges.clone(), declared_width: k };
    check_contraction_sequence(&inst.graph, &widened).map_err(EngineError::SequenceInvalid)?;
    run_driver(inst, &mut TwinwidthDriver::new(inst.n(), widened, k))
}
