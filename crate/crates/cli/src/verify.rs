//! Verification sweeps over ranges of `(n, j)`.

use std::time::Instant;

use cayley_k0::graph::{cayley_graph, graph_monoid_enumerate};
use cayley_k0::k_theory::{
    identity_element_check, k0_closed_form_j2, k0_closed_form_j3, k0_full, k0_of_graph,
    k0_reduced, kp_certificate, realization_graph_j3, KTheoryError,
};
use cayley_k0::linalg::determinant;
use cayley_k0::sequences::{h2_closed_form, haselgrove, haselgrove_is_zero, haselgrove_signed};
use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{emit, CliError};

const THREADS_VAR: &str = "CAYLEY_K0_THREADS";
const MONOID_CAP: usize = 2_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub(crate) enum Suite {
    Reduction,
    Zeros,
    J2,
    J3,
    Monoid,
    Realization,
    All,
}

impl Suite {
    const EACH: [Suite; 6] = [
        Suite::Reduction,
        Suite::Zeros,
        Suite::J2,
        Suite::J3,
        Suite::Monoid,
        Suite::Realization,
    ];

    fn as_str(self) -> &'static str {
        match self {
            Suite::Reduction => "reduction",
            Suite::Zeros => "zeros",
            Suite::J2 => "j2",
            Suite::J3 => "j3",
            Suite::Monoid => "monoid",
            Suite::Realization => "realization",
            Suite::All => "all",
        }
    }

    fn default_n_max(self) -> usize {
        match self {
            Suite::Zeros => 48,
            Suite::Monoid => 6,
            Suite::Realization => 40,
            _ => 60,
        }
    }

    fn min_n_max(self) -> usize {
        match self {
            Suite::Zeros => 1,
            _ => 3,
        }
    }
}

struct Failure {
    suite: Suite,
    n: usize,
    j: usize,
    detail: String,
}

type Check = Result<Option<String>, KTheoryError>;

fn reduction(n: usize, j: usize) -> Check {
    let full = k0_full(n, j)?.group;
    let reduced = k0_reduced(n, j)?.group;
    Ok((full != reduced).then(|| format!("full {full} vs reduced {reduced}")))
}

fn zeros(n: usize, k: usize) -> Check {
    let det = haselgrove_signed(k, n)?;
    let rule = haselgrove_is_zero(k, n);
    if det.is_zero() != rule {
        return Ok(Some(format!("det = {det}, zero rule predicts {}", if rule { "0" } else { "nonzero" })));
    }
    Ok(det.is_positive().then(|| format!("det = {det} > 0")))
}

fn j2(n: usize) -> Check {
    let closed = k0_closed_form_j2(n)?.group;
    let full = k0_full(n, 2)?.group;
    if closed != full {
        return Ok(Some(format!("closed {closed} vs full {full}")));
    }
    let h = h2_closed_form(n as u64)?;
    let exact = haselgrove(2, n)?;
    Ok((h != exact).then(|| format!("H2 closed form {h} vs determinant {exact}")))
}

fn j3(n: usize) -> Check {
    let closed = k0_closed_form_j3(n)?.group;
    let full = k0_full(n, 3)?.group;
    let reduced = k0_reduced(n, 3)?.group;
    Ok((closed != full || reduced != full)
        .then(|| format!("closed {closed}, full {full}, reduced {reduced}")))
}

fn monoid(n: usize, j: usize) -> Check {
    let g = cayley_graph(n, j)?;
    let Some(order) = k0_of_graph(&g)?.group.order() else {
        return Ok(None);
    };
    let m = graph_monoid_enumerate(&g, MONOID_CAP)?;
    if m.nonzero_group_identity().is_none() {
        return Ok(Some("nonzero part of the monoid is not a group".into()));
    }
    let got = BigInt::from(m.nonzero_order());
    Ok((got != order).then(|| format!("monoid group order {got} vs |K0| = {order}")))
}

fn realization(n: usize) -> Check {
    let e = realization_graph_j3(n)?;
    let mut problems = Vec::new();
    if !e.is_purely_infinite_simple() {
        problems.push("E_n is not purely infinite simple".to_string());
    }
    let cert = kp_certificate(n)?;
    if !cert.groups_isomorphic {
        problems.push("K0 groups differ".into());
    }
    if !identity_element_check(&e)? || !identity_element_check(&cayley_graph(n, 3 % n)?)? {
        problems.push("identity class is nonzero".into());
    }
    let det = determinant(&e.k0_presentation()).map_err(KTheoryError::from)?;
    let h3 = haselgrove(3, n)?;
    if det != -&h3 {
        problems.push(format!("det(I - A^t) of E_n = {det}, expected -{h3}"));
    }
    if !cert.determinant_signs_match {
        problems.push(format!(
            "determinant signs differ: {} vs {}",
            cert.cayley_determinant, cert.realization_determinant
        ));
    }
    Ok((!problems.is_empty()).then(|| problems.join("; ")))
}

fn cells(suite: Suite, n_max: usize, j_max: usize) -> Vec<(usize, usize)> {
    match suite {
        Suite::Reduction => (2..=j_max)
            .flat_map(|j| (j.max(3)..=n_max).map(move |n| (n, j)))
            .collect(),
        Suite::Zeros => (1..=n_max).flat_map(|n| (0..n).map(move |k| (n, k))).collect(),
        Suite::Monoid => (3..=n_max).flat_map(|n| (0..n).map(move |j| (n, j))).collect(),
        Suite::J2 => (3..=n_max).map(|n| (n, 2)).collect(),
        Suite::J3 | Suite::Realization => (3..=n_max).map(|n| (n, 3)).collect(),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn check(suite: Suite, n: usize, j: usize) -> Check {
    match suite {
        Suite::Reduction => reduction(n, j),
        Suite::Zeros => zeros(n, j),
        Suite::J2 => j2(n),
        Suite::J3 => j3(n),
        Suite::Monoid => monoid(n, j),
        Suite::Realization => realization(n),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let threads: usize = v
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| CliError::Usage(e.to_string()))
}

pub(crate) fn run(suite: Suite, n_max: Option<usize>, j_max: Option<usize>) -> Result<(), CliError> {
    let start = Instant::now();
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let j_max = j_max.unwrap_or(6);
    if j_max < 2 {
        return Err(CliError::Usage(format!("--j-max must be >= 2, got {j_max}")));
    }
    let mut work = Vec::new();
    for &s in &suites {
        let n_max = n_max.unwrap_or(s.default_n_max());
        if n_max < s.min_n_max() {
            return Err(CliError::Usage(format!(
                "--n-max must be >= {} for suite {}, got {n_max}",
                s.min_n_max(),
                s.as_str()
            )));
        }
        work.extend(cells(s, n_max, j_max).into_iter().map(|(n, j)| (s, n, j)));
    }
    let pool = thread_pool()?;
    let mut failures: Vec<Failure> = pool.install(|| {
        work.par_iter()
            .filter_map(|&(suite, n, j)| {
                let detail = match check(suite, n, j) {
                    Ok(None) => return None,
                    Ok(Some(d)) => d,
                    Err(e) => format!("error: {e}"),
                };
                Some(Failure { suite, n, j, detail })
            })
            .collect()
    });
    failures.sort_by_key(|f| (f.suite as u8, f.n, f.j));
    let list: Vec<Value> = failures
        .iter()
        .map(|f| json!({ "suite": f.suite.as_str(), "n": f.n, "j": f.j, "detail": f.detail }))
        .collect();
    let passed = failures.is_empty();
    emit(
        json!({
            "suite": suite.as_str(),
            "checks": work.len(),
            "failures": list,
            "passed": passed,
        }),
        start,
    );
    if passed {
        Ok(())
    } else {
        Err(CliError::Check(format!("{} of {} checks failed", failures.len(), work.len())))
    }
}
