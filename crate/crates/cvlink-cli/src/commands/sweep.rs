//! `sweep`: asymptotic entanglement and fidelity over an (ε, r) grid, or the
//! optimal envelope over r per ε. All quantities come from the closed-form
//! long-time limits; `--asymptotic-time` switches to evaluating the analytic
//! finite-time formulas at a given κ²t instead.

use rayon::prelude::*;

use cvlink_core::optimize::golden_section_min;
use cvlink_core::protocols::analytic::{asymptotic_negativity_reference, reference_entries};
use cvlink_core::protocols::{
    delta_closed_form, delta_steady_state, epr_summary, min_delta, optimal_r, riccati_coeffs,
};
use cvlink_core::teleport::{
    asymptotic_optimized_fidelity, channel_variances, optimize_local_squeezing,
};

use super::{core_error, Effective, Scheme};
use crate::csvio::{emit_sweep, SweepRecord};

fn log_negativity_of(n: f64) -> f64 {
    if n >= 1.0 {
        0.0
    } else {
        // n = 0 (perfect entanglement in the limit) gives +inf.
        -n.log2()
    }
}

/// Asymptotic record of the one-way scheme (also used for the splitter tree
/// at its equivalent loss). The x-p averaged EPR uncertainty diverges for
/// any nonzero loss; without loss it tends to 1/2.
fn one_way_record(
    scheme: &'static str,
    epsilon: f64,
    r: f64,
    at_time: Option<f64>,
) -> Result<SweepRecord, String> {
    if let Some(t) = at_time {
        let summary = reference_entries(epsilon, r, 1.0, t)
            .map_err(core_error)?
            .summary()
            .map_err(core_error)?;
        let delta = summary.epr().delta;
        let vars = channel_variances(&summary.gamma12).map_err(core_error)?;
        let (_, f_bk) =
            optimize_local_squeezing(vars.var_p_plus, vars.var_x_minus).map_err(core_error)?;
        return Ok(SweepRecord {
            scheme: scheme.to_string(),
            epsilon,
            r,
            t: None,
            n: summary.n,
            log_negativity: summary.log_negativity,
            delta,
            f_symmetric: 1.0 / (1.0 + delta),
            f_bk_opt: f_bk,
        });
    }
    let n = asymptotic_negativity_reference(epsilon, r).map_err(core_error)?;
    let delta = if epsilon > 0.0 { f64::INFINITY } else { 0.5 };
    Ok(SweepRecord {
        scheme: scheme.to_string(),
        epsilon,
        r,
        t: None,
        n,
        log_negativity: log_negativity_of(n),
        delta,
        f_symmetric: 1.0 / (1.0 + delta),
        f_bk_opt: asymptotic_optimized_fidelity(epsilon, r).map_err(core_error)?,
    })
}

/// Asymptotic record of the two-way scheme; its steady state is symmetric in
/// x and p, so every column follows from the steady uncertainty.
fn two_way_record(epsilon: f64, r: f64, at_time: Option<f64>) -> Result<SweepRecord, String> {
    let delta = match at_time {
        Some(t) => {
            let coeffs = riccati_coeffs(epsilon, r, 1.0).map_err(core_error)?;
            delta_closed_form(&coeffs, t)
        }
        None => delta_steady_state(epsilon, r).map_err(core_error)?,
    };
    let n = delta.min(1.0);
    let f = 1.0 / (1.0 + delta);
    Ok(SweepRecord {
        scheme: "symmetric".to_string(),
        epsilon,
        r,
        t: None,
        n,
        log_negativity: log_negativity_of(n),
        delta,
        f_symmetric: f,
        f_bk_opt: f,
    })
}

/// Record of the static EPR source with loss on both arms.
fn epr_record(epsilon: f64, r: f64) -> Result<SweepRecord, String> {
    let summary = epr_summary(epsilon, r).map_err(core_error)?;
    let delta = summary.epr().delta;
    let vars = channel_variances(&summary.gamma12).map_err(core_error)?;
    let (_, f_bk) =
        optimize_local_squeezing(vars.var_p_plus, vars.var_x_minus).map_err(core_error)?;
    Ok(SweepRecord {
        scheme: "epr".to_string(),
        epsilon,
        r,
        t: None,
        n: summary.n,
        log_negativity: summary.log_negativity,
        delta,
        f_symmetric: 1.0 / (1.0 + delta),
        f_bk_opt: f_bk,
    })
}

/// Smallest asymptotic negativity argument of the one-way scheme over
/// r ∈ [lo, hi], minimized on a log axis; endpoints are compared explicitly
/// because the optimum often sits on the boundary of the range.
fn one_way_best_r(epsilon: f64, lo: f64, hi: f64) -> Result<f64, String> {
    let objective = |ln_r: f64| {
        asymptotic_negativity_reference(epsilon, ln_r.exp())
            .expect("epsilon validated by caller, r positive")
    };
    let (ln_best, f_best) = golden_section_min(objective, lo.ln(), hi.ln(), 200);
    let mut best = (f_best, ln_best.exp());
    for r in [lo, hi] {
        let f = asymptotic_negativity_reference(epsilon, r).map_err(core_error)?;
        if f < best.0 {
            best = (f, r);
        }
    }
    Ok(best.1)
}

fn envelope_records(eff: &Effective) -> Result<Vec<SweepRecord>, String> {
    let (lo, hi) = (eff.grid_r.lo, eff.grid_r.hi);
    match eff.scheme {
        Scheme::Asymmetric => eff
            .grid_eps
            .values()
            .par_iter()
            .map(|&epsilon| {
                let r = one_way_best_r(epsilon, lo, hi)?;
                one_way_record("asymmetric", epsilon, r, None)
            })
            .collect(),
        Scheme::Symmetric => eff
            .grid_eps
            .values()
            .par_iter()
            .map(|&epsilon| {
                if epsilon == 0.0 {
                    // Lossless limit: the steady uncertainty vanishes for
                    // every r, and the optimal squeezing runs away.
                    return Ok(SweepRecord {
                        scheme: "symmetric".to_string(),
                        epsilon,
                        r: f64::INFINITY,
                        t: None,
                        n: 0.0,
                        log_negativity: f64::INFINITY,
                        delta: 0.0,
                        f_symmetric: 1.0,
                        f_bk_opt: 1.0,
                    });
                }
                let r = optimal_r(epsilon).map_err(core_error)?;
                let delta = min_delta(epsilon).map_err(core_error)?;
                let f = 1.0 / (1.0 + delta);
                Ok(SweepRecord {
                    scheme: "symmetric".to_string(),
                    epsilon,
                    r,
                    t: None,
                    n: delta.min(1.0),
                    log_negativity: log_negativity_of(delta.min(1.0)),
                    delta,
                    f_symmetric: f,
                    f_bk_opt: f,
                })
            })
            .collect(),
        Scheme::Epr => {
            // The source helps more the farther diag(1/r, r) is from vacuum;
            // prefer the squeezed end on ties.
            let effect = |r: f64| r.min(1.0 / r);
            let r_best = if effect(hi) <= effect(lo) { hi } else { lo };
            eff.grid_eps
                .values()
                .par_iter()
                .map(|&epsilon| epr_record(epsilon, r_best))
                .collect()
        }
        Scheme::Polygamy => {
            let epsilon = polygamy_epsilon(eff.m_sites)?;
            let r = one_way_best_r(epsilon, lo, hi)?;
            Ok(vec![one_way_record("polygamy", epsilon, r, None)?])
        }
    }
}

fn polygamy_epsilon(m_sites: usize) -> Result<f64, String> {
    if m_sites < 2 {
        return Err(format!(
            "invalid value for --m-sites: the splitter tree needs at least two receivers (got {m_sites})"
        ));
    }
    Ok(1.0 - 1.0 / m_sites as f64)
}

fn grid_records(eff: &Effective) -> Result<Vec<SweepRecord>, String> {
    let r_values = eff.grid_r.values();
    match eff.scheme {
        Scheme::Polygamy => {
            // The line loss is fixed by the receiver count, so the grid is
            // one-dimensional in r.
            let epsilon = polygamy_epsilon(eff.m_sites)?;
            r_values
                .par_iter()
                .map(|&r| one_way_record("polygamy", epsilon, r, eff.asymptotic_time))
                .collect()
        }
        scheme => {
            let eps_values = eff.grid_eps.values();
            let points: Vec<(f64, f64)> = eps_values
                .iter()
                .flat_map(|&e| r_values.iter().map(move |&r| (e, r)))
                .collect();
            points
                .par_iter()
                .map(|&(epsilon, r)| match scheme {
                    Scheme::Asymmetric => {
                        one_way_record("asymmetric", epsilon, r, eff.asymptotic_time)
                    }
                    Scheme::Symmetric => two_way_record(epsilon, r, eff.asymptotic_time),
                    Scheme::Epr => epr_record(epsilon, r),
                    Scheme::Polygamy => unreachable!("handled above"),
                })
                .collect()
        }
    }
}

pub fn execute(eff: &Effective, envelope: bool) -> Result<String, String> {
    let records = if envelope {
        envelope_records(eff)?
    } else {
        grid_records(eff)?
    };
    Ok(emit_sweep(&records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commands::{resolve, RawShared};
    use crate::config::GridSpec;
    use crate::csvio::parse_sweep;

    fn eff(scheme: Scheme, grid_eps: &str, grid_r: &str) -> Effective {
        let mut e = resolve(&RawShared {
            scheme_pos: Some(scheme),
            ..RawShared::default()
        })
        .unwrap();
        e.grid_eps = GridSpec::parse(grid_eps, false, "--grid-eps").unwrap();
        e.grid_r = GridSpec::parse(grid_r, true, "--grid-r").unwrap();
        e
    }

    #[test]
    fn plateau_column_at_one_third_loss() {
        let mut e = eff(Scheme::Asymmetric, "0:1:2", "0.1:10:7");
        e.grid_eps = GridSpec {
            lo: 1.0 / 3.0,
            hi: 1.0 / 3.0,
            n: 1,
            log: false,
        };
        let rows = parse_sweep(&execute(&e, false).unwrap()).unwrap();
        assert_eq!(rows.len(), 7);
        for row in &rows {
            assert!((row.n - 1.0 / 3.0).abs() <= 1e-6, "N = {}", row.n);
            assert_eq!(row.t, None);
            assert!(row.delta.is_infinite());
            assert_eq!(row.f_symmetric, 0.0);
        }
    }

    #[test]
    fn rows_are_row_major_eps_outer() {
        let e = eff(Scheme::Asymmetric, "0.1:0.3:3", "0.5:2:2");
        let rows = parse_sweep(&execute(&e, false).unwrap()).unwrap();
        assert_eq!(rows.len(), 6);
        assert!((rows[0].epsilon - 0.1).abs() < 1e-15);
        assert!((rows[1].epsilon - 0.1).abs() < 1e-15);
        assert!(rows[1].r > rows[0].r);
        assert!((rows[2].epsilon - 0.2).abs() < 1e-15);
    }

    #[test]
    fn symmetric_envelope_matches_loss() {
        let e = eff(Scheme::Symmetric, "0.1:0.8:8", "0.1:10:5");
        let rows = parse_sweep(&execute(&e, true).unwrap()).unwrap();
        for row in &rows {
            assert!((row.n - row.epsilon).abs() <= 1e-12);
            assert!((row.r - (1.0 - row.epsilon) / row.epsilon).abs() <= 1e-9 * row.r);
            assert!((row.f_symmetric - 1.0 / (1.0 + row.epsilon)).abs() <= 1e-12);
        }
    }

    #[test]
    fn epr_envelope_uses_strongest_squeezing() {
        let e = eff(Scheme::Epr, "0.2:0.6:3", "0.1:10:5");
        let rows = parse_sweep(&execute(&e, true).unwrap()).unwrap();
        for row in &rows {
            assert_eq!(row.r, 10.0);
            let expect = 1.0 + (1.0 - row.epsilon).sqrt() * (0.1 - 1.0);
            assert!((row.n - expect).abs() <= 1e-12);
        }
    }

    #[test]
    fn finite_time_override_changes_values() {
        let mut e = eff(Scheme::Asymmetric, "0.3:0.3:1", "2:2:1");
        let limit_rows = parse_sweep(&execute(&e, false).unwrap()).unwrap();
        e.asymptotic_time = Some(10.0);
        let finite_rows = parse_sweep(&execute(&e, false).unwrap()).unwrap();
        assert!(finite_rows[0].delta.is_finite());
        assert!(finite_rows[0].n > limit_rows[0].n);
        // Still labeled as the asymptotic surface.
        assert_eq!(finite_rows[0].t, None);
    }

    #[test]
    fn polygamy_sweep_is_one_dimensional() {
        let mut e = eff(Scheme::Polygamy, "0:0.9:5", "0.5:4:4");
        e.m_sites = 3;
        let rows = parse_sweep(&execute(&e, false).unwrap()).unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            // Parsed back from CSV, so only the 12 emitted digits survive.
            assert!((row.epsilon - 2.0 / 3.0).abs() < 1e-11);
        }
    }

    #[test]
    fn byte_identical_reruns() {
        let e = eff(Scheme::Symmetric, "0.1:0.9:5", "0.1:10:5");
        assert_eq!(execute(&e, false).unwrap(), execute(&e, false).unwrap());
    }
}
