use super::checks::{comonad_into, comonoid_and_rules_into, extraction_into, higher_order_into, Checker};
use super::report::{CheckResult, ModelKind, Report, RunConfig};
use crate::error::Result;
use crate::fragment::ModelFragment;
use crate::linalg::ScalarDomain;
use crate::poly_model::{fragment_as_model, PolyFragment};
use crate::rel_model::RelFragment;

/// Every check family on one fragment, in a fixed order.
pub fn run_suite_on(frag: &dyn ModelFragment, max_n: usize) -> Vec<CheckResult> {
    let mut ch = Checker::new(frag);
    comonad_into(&mut ch, max_n);
    comonoid_and_rules_into(&mut ch, max_n);
    higher_order_into(&mut ch, max_n);
    extraction_into(&mut ch, max_n);
    ch.finish()
}

/// Builds the configured fragment and runs the whole suite on it.
pub fn run_suite(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let checks = match config.model {
        ModelKind::Rel => {
            let mut frag = RelFragment::new(config.size, config.max_degree)?;
            if let Some(mu) = config.mutation {
                frag.mutate(mu)?;
            }
            run_suite_on(&frag, config.max_n)
        }
        ModelKind::Poly => {
            let field = ScalarDomain::field_of_characteristic(config.characteristic)?;
            let frag = PolyFragment::with_seed(config.size, field, config.max_degree, config.seed)?;
            run_suite_on(fragment_as_model(&frag), config.max_n)
        }
    };
    Ok(Report::new(config.clone(), checks))
}
