//! Named verification suites.

use rayon::prelude::*;
use swcalc_core::commutant::{b_limit_check, identify_w2_b2, gl22_check, verify_b_generators, verify_commutant_invariants};
use swcalc_core::free_systems::{build_free, gl11_fields, n2_fields, verify_gl11, verify_n2, FreeSystemSpec};
use swcalc_core::invariant_oracle::verify_weyl;
use swcalc_core::lattice_screening::{verify_kernel_theorem, verify_lemma_q1, verify_lemma_q2, verify_w2_opes, w_limit_check, ScreeningModel};
use swcalc_core::report::Report;
use swcalc_core::swinf::{verify_decoupling_n2, verify_realization, verify_relations, Realization};
use swcalc_core::vertex::Weight;
use swcalc_core::{Error, RatFunc, Result};

pub const SUITES: [&str; 11] = ["gl11", "n2", "realization", "relations", "decouple2", "weyl", "w2opes", "kernels", "w2b2", "gl22remark", "limits"];

pub struct Params {
    pub ns: Option<Vec<usize>>,
    pub k: RatFunc,
    pub kmax: u32,
    pub weight: Option<Weight>,
}

fn default_ns(suite: &str) -> Vec<usize> {
    match suite {
        "gl11" | "kernels" => vec![1, 2, 3],
        "decouple2" | "w2opes" | "w2b2" | "gl22remark" => vec![2],
        _ => vec![1, 2],
    }
}

fn c_of(n: usize) -> RatFunc {
    RatFunc::from_int(n as i64)
}

fn run_one(suite: &str, n: usize, p: &Params) -> Result<Report> {
    Ok(match suite {
        "gl11" => {
            let alg = build_free(&FreeSystemSpec::bcbg(n))?;
            verify_gl11(&gl11_fields(&alg, n)?, &c_of(n))
        }
        "n2" => {
            let alg = build_free(&FreeSystemSpec::bcbg(n))?;
            verify_n2(&n2_fields(&alg, n)?, &c_of(n))
        }
        "realization" => verify_realization(n, p.kmax)?,
        "relations" => verify_relations(&Realization::new(n)?),
        "decouple2" => {
            if n != 2 {
                return Err(Error::InvalidArgument("decouple2 is the n = 2 suite".into()));
            }
            verify_decoupling_n2(&Realization::new(2)?)
        }
        "weyl" => verify_weyl(n, p.weight.unwrap_or(Weight::from_integer(3))),
        "w2opes" => verify_w2_opes(p.k.clone())?,
        "kernels" => {
            let mut r = verify_kernel_theorem(n, p.k.clone())?;
            let m = ScreeningModel::new(n, p.k.clone())?;
            r.merge(verify_lemma_q1(&m)?);
            r.merge(verify_lemma_q2(&m)?);
            r
        }
        "w2b2" => identify_w2_b2(p.k.clone())?,
        "gl22remark" => gl22_check()?,
        "limits" => {
            let mut r = w_limit_check(n)?;
            r.merge(b_limit_check(n)?);
            r
        }
        "commutant" => {
            let mut r = verify_b_generators(n, p.k.clone())?;
            let ws: Vec<Weight> = match p.weight {
                Some(w) => vec![w],
                None => (1..=4).map(|h| Weight::new(h, 2)).collect(),
            };
            r.merge(verify_commutant_invariants(n, &ws)?);
            r
        }
        _ => return Err(Error::InvalidArgument(format!("unknown suite {suite}; expected one of {}", SUITES.join(", ")))),
    })
}

/// Runs the suite for every requested rank concurrently and assembles the
/// checks in rank order.
pub fn run_suite(suite: &str, p: &Params) -> Result<Report> {
    if !SUITES.contains(&suite) && suite != "commutant" {
        return Err(Error::InvalidArgument(format!("unknown suite {suite}; expected one of {}", SUITES.join(", "))));
    }
    let ns = p.ns.clone().unwrap_or_else(|| default_ns(suite));
    let parts: Vec<Result<Report>> = ns.par_iter().map(|&n| run_one(suite, n, p)).collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        let mut r = parts.into_iter().next().unwrap_or_else(|| Report::new(suite, ""));
        r.suite = suite.to_string();
        return Ok(r);
    }
    let contexts: Vec<String> = parts.iter().map(|r| r.context.clone()).collect();
    let mut out = Report::new(suite, contexts.join("; "));
    out.wall_time_ms = parts.iter().map(|r| r.wall_time_ms).max().unwrap_or(0);
    for r in parts {
        for mut c in r.checks {
            c.id = format!("[{}] {}", r.context, c.id);
            out.push(c);
        }
    }
    Ok(out)
}
