use std::process::ExitCode;
use std::time::Instant;
use swcalc_core::commutant::{b_limit_check, identify_w2_b2, gl22_check};
use swcalc_core::free_systems::{build_free, gl11_fields, n2_fields, verify_gl11, verify_n2, FreeSystemSpec};
use swcalc_core::invariant_oracle::verify_weyl;
use swcalc_core::lattice_screening::{verify_kernel_theorem, verify_lemma_q1, verify_lemma_q2, verify_w2_opes, w_limit_check, ScreeningModel};
use swcalc_core::report::Report;
use swcalc_core::swinf::{verify_decoupling_n2, verify_realization, verify_relations, Realization};
use swcalc_core::vertex::properties::property_report;
use swcalc_core::vertex::Weight;
use swcalc_core::{RatFunc, Result};

fn gather(parts: impl IntoIterator<Item = Result<Report>>) -> Result<Vec<Report>> {
    parts.into_iter().collect()
}

fn c(n: usize) -> RatFunc {
    RatFunc::from_int(n as i64)
}

fn criterion(id: u32, title: &str, run: impl FnOnce() -> Result<Vec<Report>>) -> bool {
    let t = Instant::now();
    let (ok, summary) = match run() {
        Ok(reports) => {
            let total: usize = reports.iter().map(|r| r.checks.len()).sum();
            let failed: Vec<String> = reports.iter().flat_map(|r| r.failures().map(move |c| format!("{} / {}", r.context, c.id))).collect();
            let ok = total > 0 && failed.is_empty();
            let mut s = format!("{}/{total} checks", total - failed.len());
            if let Some(f) = failed.first() {
                s.push_str(&format!("; first failure: {f}"));
            }
            (ok, s)
        }
        Err(e) => (false, format!("error: {e}")),
    };
    println!("criterion {id:2}: {} {title} ({summary}, {:.1} s)", if ok { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
    ok
}

fn main() -> ExitCode {
    let k = RatFunc::kappa;
    let results = [
        criterion(1, "gl(1|1) OPEs at c = n, n = 1, 2, 3", || {
            gather((1..=3).map(|n| Ok(verify_gl11(&gl11_fields(&build_free(&FreeSystemSpec::bcbg(n))?, n)?, &c(n)))))
        }),
        criterion(2, "N=2 OPEs at c = n, n = 1, 2", || {
            gather((1..=2).map(|n| Ok(verify_n2(&n2_fields(&build_free(&FreeSystemSpec::bcbg(n))?, n)?, &c(n)))))
        }),
        criterion(3, "abstract against free-field OPEs, k, l <= 2, n = 1, 2", || gather((1..=2).map(|n| verify_realization(n, 2)))),
        criterion(4, "relation space below and at n + 1/2, n = 1, 2", || gather((1..=2).map(|n| Ok(verify_relations(&Realization::new(n)?))))),
        criterion(5, "n = 2 decoupling relations and the j-1 j+1 OPE", || Ok(vec![verify_decoupling_n2(&Realization::new(2)?)])),
        criterion(6, "FFT and SFT at desk scale, w <= 3, n = 1, 2", || Ok((1..=2).map(|n| verify_weyl(n, Weight::from_integer(3))).collect())),
        criterion(7, "screening kernels n = 1, 2, 3 and the Q1, Q2 lemmas, symbolic k", || {
            let mut out = Vec::new();
            for n in 1..=3 {
                out.push(verify_kernel_theorem(n, k())?);
                let m = ScreeningModel::new(n, k())?;
                out.push(verify_lemma_q1(&m)?);
                out.push(verify_lemma_q2(&m)?);
            }
            Ok(out)
        }),
        criterion(8, "W(2,k) OPE table, symbolic k", || Ok(vec![verify_w2_opes(k())?])),
        criterion(9, "B(2,k) against W(2,k+2), symbolic k and k = 1, 3, -5", || {
            gather([k(), c(1), c(3), RatFunc::from_int(-5)].into_iter().map(identify_w2_b2))
        }),
        criterion(10, "k -> oo limits of B(2,k) and W(2,k) against the free fields", || Ok(vec![b_limit_check(2)?, w_limit_check(2)?])),
        criterion(11, "gl(2|2) at level -2 realizes the W(2,-1) table", || Ok(vec![gl22_check()?])),
        criterion(12, "engine properties, 500 instances each", || Ok(vec![property_report(500, 20_261_016)])),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/12 criteria passed");
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
