use super::rules::*;
use super::{run_driver, ClassTag, Driver, EngineError, EngineFailure, RuleApplication, Run, WorkState};
use crate::families::{check_rotation_planarity, RotationSystem};
use crate::graph::Graph;
use crate::instance::{Mode, XYInstance};
use crate::ratio::Rational;

pub const PLANAR_DEGREE_CAP: usize = 10;

/// Cost-free rules first, then the degree-10 rule. Planarity guarantees a
/// vertex of degree at most 10 outside Y once the free rules are exhausted.
#[derive(Debug, Default)]
pub struct PlanarDriver;

impl Driver for PlanarDriver {
    fn class(&self) -> ClassTag {
        ClassTag::Planar
    }
    fn mode(&self) -> Mode {
        Mode::Plain
    }
    fn constant(&self) -> Rational {
        Rational::from_integer(PLANAR_DEGREE_CAP as u64)
    }
    fn step(&mut self, s: &WorkState) -> Result<Option<RuleApplication>, EngineError> {
        Ok(rule_r0_isolated(s)
            .or_else(|| rule_r4_y_pendant(s))
            .or_else(|| rule_r2_y_edge(s))
            .or_else(|| rule_r1_x_elim(s))
            .or_else(|| rule_r3_low_degree(s, PLANAR_DEGREE_CAP)))
    }
}

/// Runs on `inst` (plain mode). An embedding, when given, is checked first;
/// without one, planarity is trusted and a stall reports a violation.
pub fn run_planar(inst: &XYInstance, embedding: Option<&RotationSystem>) -> Result<Run, EngineFailure> {
    if inst.mode != Mode::Plain {
        return Err(EngineError::NotInClass(format!("planar driver needs plain mode, got {}", inst.mode)).into());
    }
    if let Some(rs) = embedding {
        check_rotation_planarity(&inst.graph, rs).map_err(EngineError::CertificateInvalid)?;
    }
    run_driver(inst, &mut PlanarDriver)
}

pub fn run_planar_graph(g: &Graph, embedding: Option<&RotationSystem>) -> Result<Run, EngineFailure> {
    run_planar(&XYInstance::plain(g.clone()), embedding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_complete, gen_cycle, gen_dodecahedron};
    use crate::oracles::gamma_rho;

    #[test]
    fn small_cases() {
        let w = run_planar_graph(&gen_cycle(4), None).unwrap().witness;
        assert!(w.check(&XYInstance::plain(gen_cycle(4))).is_ok());
        let (gamma, rho) = gamma_rho(&gen_cycle(4)).unwrap();
        assert_eq!((gamma, rho), (2, 1));
        assert!(gamma <= w.d.len() && w.p.len() <= rho);

        let w = run_planar_graph(&Graph::empty(1), None).unwrap().witness;
        assert_eq!((w.d.clone(), w.p.clone()), (vec![0], vec![0]));
        assert_eq!(w.ratio, Some(Rational::from_integer(1)));
    }

    #[test]
    fn dodecahedron() {
        let g = gen_dodecahedron();
        let w = run_planar_graph(&g, None).unwrap().witness;
        assert!(w.check(&XYInstance::plain(g)).is_ok());
        assert!(w.ratio.unwrap() <= Rational::from_integer(10));
    }

    #[test]
    fn stalls_on_dense_nonplanar_input() {
        let err = run_planar_graph(&gen_complete(12), None).unwrap_err();
        assert!(matches!(err.error, EngineError::Stalled { .. }));
    }
}
