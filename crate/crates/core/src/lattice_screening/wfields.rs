//! The fields `N_i, E_i, Ψ^±_i`, the generators `E, N, Ψ^±, F^±` of `𝒲_{n,k}`,
//! their screening kernels and the `k → ∞` limit.

use super::words::{WordBasis, Words};
use super::{build_m, exp_circle, screening_apply, ExponentialField, ScreeningCharge};
use crate::coeff::RatFunc;
use crate::free_systems::{build_free, FreeSystemSpec};
use crate::report::Report;
use crate::vertex::{AlgebraHandle, FieldExpr, Momentum, Weight};
use std::collections::BTreeMap;
use crate::{Error, Result};
use rayon::prelude::*;

pub struct ScreeningModel {
    pub n: usize,
    pub k: RatFunc,
    pub alg: AlgebraHandle,
}

#[derive(Debug, Clone)]
pub struct WGenerators {
    pub e: FieldExpr,
    pub n: FieldExpr,
    pub psi_plus: FieldExpr,
    pub psi_minus: FieldExpr,
    pub f_plus: FieldExpr,
    pub f_minus: FieldExpr,
}

impl WGenerators {
    pub fn named(&self) -> Vec<(String, FieldExpr)> {
        [("E", &self.e), ("N", &self.n), ("Psi[+]", &self.psi_plus), ("Psi[-]", &self.psi_minus), ("F[+]", &self.f_plus), ("F[-]", &self.f_minus)]
            .into_iter()
            .map(|(s, f)| (s.to_string(), f.clone()))
            .collect()
    }
}

impl ScreeningModel {
    pub fn new(n: usize, k: RatFunc) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::InvalidArgument("the level must be nonzero".into()));
        }
        Ok(ScreeningModel { n, k, alg: build_m(n)? })
    }

    pub fn symbolic(n: usize) -> Result<Self> {
        Self::new(n, RatFunc::kappa())
    }

    fn g(&self, name: &str, i: usize) -> Result<FieldExpr> {
        self.alg.gen(&format!("{name}[{i}]"))
    }

    fn inv_k(&self) -> RatFunc {
        self.k.recip().expect("nonzero level")
    }

    pub fn e(&self, i: usize) -> Result<FieldExpr> {
        self.g("dY", i)
    }

    /// `N_i = ∂X_i − :b^i c^i:`
    pub fn n_i(&self, i: usize) -> Result<FieldExpr> {
        self.g("dX", i)?.try_sub(&self.alg.wick(&self.g("b", i)?, &self.g("c", i)?)?)
    }

    pub fn psi_plus(&self, i: usize) -> Result<FieldExpr> {
        self.g("b", i)
    }

    /// `Ψ^-_i = ∂c^i − :c^i ∂Y_i:`
    pub fn psi_minus(&self, i: usize) -> Result<FieldExpr> {
        let c = self.g("c", i)?;
        self.alg.derivative(&c)?.try_sub(&self.alg.wick(&c, &self.e(i)?)?)
    }

    /// `Q_{α_i} = Res :b^i e^{Y_i}:`
    pub fn q_alpha(&self, i: usize) -> Result<ScreeningCharge> {
        let y = self.alg.lookup(&format!("dY[{i}]"))?;
        Ok(ScreeningCharge {
            label: format!("Q_alpha{i}"),
            current: ExponentialField::new(vec![(y, RatFunc::one())], self.g("b", i)?),
            normalization: RatFunc::one(),
        })
    }

    /// `Q_{β_i} = Res :(c^i − c^{i+1}) e^{k(X_i − X_{i+1})}:`
    pub fn q_beta(&self, i: usize) -> Result<ScreeningCharge> {
        if i == 0 || i >= self.n {
            return Err(Error::InvalidArgument(format!("Q_beta{i} needs 1 ≤ i < n")));
        }
        let x0 = self.alg.lookup(&format!("dX[{i}]"))?;
        let x1 = self.alg.lookup(&format!("dX[{}]", i + 1))?;
        let mom: Momentum = vec![(x0, self.k.clone()), (x1, -&self.k)];
        Ok(ScreeningCharge {
            label: format!("Q_beta{i}"),
            current: ExponentialField::new(mom, self.g("c", i)?.try_sub(&self.g("c", i + 1)?)?),
            normalization: self.inv_k(),
        })
    }

    pub fn screenings(&self) -> Result<Vec<ScreeningCharge>> {
        let mut out = (1..=self.n).map(|i| self.q_alpha(i)).collect::<Result<Vec<_>>>()?;
        for i in 1..self.n {
            out.push(self.q_beta(i)?);
        }
        Ok(out)
    }

    pub fn w_generators(&self) -> Result<WGenerators> {
        self.build_w(true)
    }

    /// `F^+` without its `(n−i)∂Ψ^+_i/k` correction.
    pub fn w_generators_mutated(&self) -> Result<WGenerators> {
        self.build_w(false)
    }

    fn build_w(&self, correct_f_plus: bool) -> Result<WGenerators> {
        let alg = &self.alg;
        let n = self.n;
        let ik = self.inv_k();
        let mut w = WGenerators {
            e: alg.zero(),
            n: alg.zero(),
            psi_plus: alg.zero(),
            psi_minus: alg.zero(),
            f_plus: alg.zero(),
            f_minus: alg.zero(),
        };
        for i in 1..=n {
            let (ei, ni, pp, pm) = (self.e(i)?, self.n_i(i)?, self.psi_plus(i)?, self.psi_minus(i)?);
            let shift = ik.scale_rational(&crate::coeff::q((n - i) as i64, 1));
            w.e = w.e.try_sub(&ei)?;
            w.n = w.n.try_sub(&ni)?.try_add(&ei.scale(&shift))?;
            w.psi_plus = w.psi_plus.try_add(&pp)?;
            w.psi_minus = w.psi_minus.try_add(&pm)?;
            w.f_plus = w.f_plus.try_add(&alg.wick(&pp, &ni)?)?;
            if correct_f_plus {
                w.f_plus = w.f_plus.try_sub(&alg.derivative(&pp)?.scale(&shift))?;
            }
            w.f_minus = w.f_minus.try_add(&alg.wick(&ni, &pm)?)?.try_sub(&alg.derivative(&pm)?.scale(&shift))?;
        }
        let cross = ik.clone();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let t = alg.wick(&self.e(j)?, &self.psi_minus(i)?)?.scale(&cross);
                w.f_minus = if i < j { w.f_minus.try_add(&t)? } else { w.f_minus.try_sub(&t)? };
            }
        }
        Ok(w)
    }
}

/// The operator products of `N_i, E_i, Ψ^±_i`, their mutual locality across
/// indices, and their membership in `Ker Q_{α_i}`.
pub fn verify_lemma_q1(m: &ScreeningModel) -> Result<Report> {
    let mut r = Report::new("lemma-q1", format!("n={}, k={}", m.n, m.k));
    let alg = &m.alg;
    for i in 1..=m.n {
        let (e, n, pp, pm) = (m.e(i)?, m.n_i(i)?, m.psi_plus(i)?, m.psi_minus(i)?);
        let one = alg.one();
        r.check_ope(format!("N{i} E{i}"), alg, &n, &e, &[(2, one.clone())]);
        r.check_ope(format!("N{i} N{i}"), alg, &n, &n, &[(2, one.clone())]);
        r.check_ope(format!("N{i} Psi+{i}"), alg, &n, &pp, &[(1, -&pp)]);
        r.check_ope(format!("N{i} Psi-{i}"), alg, &n, &pm, &[(1, pm.clone())]);
        r.check_ope(format!("Psi+{i} Psi-{i}"), alg, &pp, &pm, &[(2, one.clone()), (1, -&e)]);
        r.check_ope(format!("E{i} E{i}"), alg, &e, &e, &[]);
        r.check_ope(format!("E{i} Psi+{i}"), alg, &e, &pp, &[]);
        r.check_ope(format!("E{i} Psi-{i}"), alg, &e, &pm, &[]);
        r.check_ope(format!("Psi+{i} Psi+{i}"), alg, &pp, &pp, &[]);
        r.check_ope(format!("Psi-{i} Psi-{i}"), alg, &pm, &pm, &[]);
        for j in 1..=m.n {
            if j == i {
                continue;
            }
            let other = [m.e(j)?, m.n_i(j)?, m.psi_plus(j)?, m.psi_minus(j)?];
            let ok = [&e, &n, &pp, &pm]
                .iter()
                .all(|x| other.iter().all(|y| alg.ope(x, y).map(|o| o.is_regular()).unwrap_or(false)));
            r.push_bool(format!("index {i} against index {j} is regular"), ok, None);
        }
        let q = m.q_alpha(i)?;
        for (name, x) in [("E", &e), ("N", &n), ("Psi+", &pp), ("Psi-", &pm)] {
            let res = screening_apply(&q, x)?;
            r.push_bool(format!("Q_alpha{i} {name}{i} = 0"), res.is_zero(), (!res.is_zero()).then(|| res.to_string()));
        }
        let ey = alg.exponential(&q.current.momentum);
        r.push_eq(format!("b{i} e^Y{i} o1 Psi-{i} = e^Y{i}"), &exp_circle(&q.current, &pm, 1)?, &ey);
    }
    Ok(r.finish())
}

/// The five displayed families of `Ker Q_{β_i}` and the expansion of `:N_iΨ^-_i:`.
pub fn verify_lemma_q2(m: &ScreeningModel) -> Result<Report> {
    let mut r = Report::new("lemma-q2", format!("n={}, k={}", m.n, m.k));
    let alg = &m.alg;
    let ik = m.inv_k();
    for i in 1..m.n {
        let j = i + 1;
        let q = m.q_beta(i)?;
        let (ei, ej, ni, nj) = (m.e(i)?, m.e(j)?, m.n_i(i)?, m.n_i(j)?);
        let (ppi, ppj, pmi, pmj) = (m.psi_plus(i)?, m.psi_plus(j)?, m.psi_minus(i)?, m.psi_minus(j)?);
        let members = vec![
            (format!("E{i}+E{j}"), ei.try_add(&ej)?),
            (format!("N{i}+N{j}-E{i}/k"), ni.try_add(&nj)?.try_sub(&ei.scale(&ik))?),
            (format!("Psi+{i}+Psi+{j}"), ppi.try_add(&ppj)?),
            (format!("Psi-{i}+Psi-{j}"), pmi.try_add(&pmj)?),
            (
                format!(":Psi+{i}N{i}:+:Psi+{j}N{j}:-dPsi+{i}/k"),
                alg.wick(&ppi, &ni)?.try_add(&alg.wick(&ppj, &nj)?)?.try_sub(&alg.derivative(&ppi)?.scale(&ik))?,
            ),
            (
                format!(":N{i}Psi-{i}:+:N{j}Psi-{j}:+(:E{j}Psi-{i}:-:E{i}Psi-{j}:)/k-dPsi-{i}/k"),
                alg.wick(&ni, &pmi)?
                    .try_add(&alg.wick(&nj, &pmj)?)?
                    .try_add(&alg.wick(&ej, &pmi)?.try_sub(&alg.wick(&ei, &pmj)?)?.scale(&ik))?
                    .try_sub(&alg.derivative(&pmi)?.scale(&ik))?,
            ),
        ];
        for (name, x) in members {
            let res = screening_apply(&q, &x)?;
            r.push_bool(format!("Q_beta{i} {name} = 0"), res.is_zero(), (!res.is_zero()).then(|| res.to_string()));
        }
    }
    for i in 1..=m.n {
        let f = |s: &str| crate::parse_field(alg, &s.replace('#', &i.to_string()));
        let rhs = f("no(b[#],d(c[#]),c[#]) - no(c[#],dX[#],dY[#]) + no(d(c[#]),dX[#]) - no(d(c[#]),dY[#]) + (1/2)*d^2(c[#])")?;
        r.push_eq(format!(":N{i}Psi-{i}: expansion"), &alg.wick(&m.n_i(i)?, &m.psi_minus(i)?)?, &rhs);
    }
    Ok(r.finish())
}

fn kernel_grid(m: &ScreeningModel, w: &WGenerators, r: &mut Report) -> Result<()> {
    let gens = w.named();
    let qs = m.screenings()?;
    let grid: Vec<(usize, usize)> = (0..qs.len()).flat_map(|a| (0..gens.len()).map(move |b| (a, b))).collect();
    let results: Vec<Result<FieldExpr>> = grid.par_iter().map(|&(a, b)| screening_apply(&qs[a], &gens[b].1)).collect();
    for (&(a, b), res) in grid.iter().zip(results) {
        let id = format!("{} {}", qs[a].label, gens[b].0);
        match res {
            Ok(x) => r.push_bool(id, x.is_zero(), (!x.is_zero()).then(|| format!("residue {x}"))),
            Err(e) => r.push_bool(id, false, Some(e.to_string())),
        }
    }
    Ok(())
}

/// `E, N, Ψ^±, F^±` lie in every `Ker Q_{α_i}` and `Ker Q_{β_i}`.
pub fn verify_kernel_theorem(n: usize, k: RatFunc) -> Result<Report> {
    let m = ScreeningModel::new(n, k)?;
    verify_kernels_of(&m, &m.w_generators()?)
}

pub fn verify_kernels_of(m: &ScreeningModel, w: &WGenerators) -> Result<Report> {
    let mut r = Report::new("kernels", format!("n={}, k={}", m.n, m.k));
    kernel_grid(m, w, &mut r)?;
    Ok(r.finish())
}

/// The images of `E, N, Ψ^±, F^±` in the rank-n bcβγ system, built from
/// `E_i ↦ −:b_ic_i: + :β_iγ_i:`, `N_i ↦ −:b_ic_i:`, `Ψ^+_i ↦ :b_iγ_i:`, `Ψ^-_i ↦ −:c_iβ_i:`.
pub fn free_images(n: usize) -> Result<(AlgebraHandle, Vec<(String, FieldExpr)>)> {
    let f = build_free(&FreeSystemSpec::bcbg(n))?;
    let g = |s: &str, i: usize| f.gen(&format!("{s}[{i}]"));
    let mut e = f.zero();
    let mut nn = f.zero();
    let mut pp = f.zero();
    let mut pm = f.zero();
    let mut fp = f.zero();
    let mut fm = f.zero();
    for i in 1..=n {
        let bc = f.wick(&g("b", i)?, &g("c", i)?)?;
        let bg = f.wick(&g("beta", i)?, &g("gamma", i)?)?;
        let ni = -&bc;
        let ei = ni.try_add(&bg)?;
        let ppi = f.wick(&g("b", i)?, &g("gamma", i)?)?;
        let pmi = -&f.wick(&g("c", i)?, &g("beta", i)?)?;
        e = e.try_sub(&ei)?;
        nn = nn.try_sub(&ni)?;
        pp = pp.try_add(&ppi)?;
        pm = pm.try_add(&pmi)?;
        fp = fp.try_add(&f.wick(&ppi, &ni)?)?;
        fm = fm.try_add(&f.wick(&ni, &pmi)?)?;
    }
    let named = vec![
        ("E".to_string(), e),
        ("N".into(), nn),
        ("Psi[+]".into(), pp),
        ("Psi[-]".into(), pm),
        ("F[+]".into(), fp),
        ("F[-]".into(), fm),
    ];
    Ok((f, named))
}

/// Every pole of every product among `E, N, Ψ^±, F^±` in `𝒲_{n,k}`, written in
/// normally ordered words of the generators, has a limit as `k → ∞`; the limit
/// expression evaluated on the free-field images equals the free-field pole.
pub fn w_limit_check(n: usize) -> Result<Report> {
    let m = ScreeningModel::symbolic(n)?;
    let gens = m.w_generators()?.named();
    let (f, images) = free_images(n)?;
    limit_report("w-limit", n, &m.alg, &gens, &f, &images)
}

/// Compares the `k → ∞` limits of the poles among `E, N, Ψ^±, F^±` in `alg`
/// with the poles among their `images` in `f`.
pub(crate) fn limit_report(
    suite: &str,
    n: usize,
    alg: &AlgebraHandle,
    gens: &[(String, FieldExpr)],
    f: &AlgebraHandle,
    images: &[(String, FieldExpr)],
) -> Result<Report> {
    let with_composites = |alg: &AlgebraHandle, g: &[(String, FieldExpr)]| -> Result<Vec<(String, FieldExpr)>> {
        let mut out = g.to_vec();
        if n >= 2 {
            out.push(("Psi[+] o0 F[-]".into(), alg.circle(&g[2].1, &g[5].1, 0)?));
            out.push(("F[+] o1 F[-]".into(), alg.circle(&g[4].1, &g[5].1, 1)?));
        }
        Ok(out)
    };
    let words = Words::new(alg, with_composites(alg, gens)?)?;
    let free_words = Words::new(f, with_composites(f, images)?)?;
    let mut bases: BTreeMap<Weight, WordBasis> = BTreeMap::new();
    let mut r = Report::new(suite, format!("n={n}"));
    for (ai, (an, a)) in gens.iter().enumerate() {
        for (bi, (bn, b)) in gens.iter().enumerate() {
            let ope = alg.ope(a, b)?;
            let free = f.ope(&images[ai].1, &images[bi].1)?;
            let wsum = a.weight().unwrap_or_default() + b.weight().unwrap_or_default();
            for order in 1..=wsum.to_integer() as u32 {
                let wt = wsum - Weight::from_integer(order as i64);
                if !bases.contains_key(&wt) {
                    bases.insert(wt, words.basis(wt)?);
                }
                let basis = &bases[&wt];
                let pole = ope.pole(order).cloned().unwrap_or_else(|| alg.zero());
                let want = free.pole(order).cloned().unwrap_or_else(|| f.zero());
                let res = (|| -> Result<FieldExpr> {
                    let mut acc = f.zero();
                    for (i, c) in basis.decompose(&pole)? {
                        let lim = RatFunc::from_rational(c.limit_at_infinity()?);
                        acc = acc.try_add(&free_words.eval(&basis.words[i])?.scale(&lim))?;
                    }
                    Ok(acc)
                })();
                let id = format!("{an} {bn} pole {order}");
                match res {
                    Ok(got) => r.push_eq(id, &got, &want),
                    Err(e) => r.push_bool(id, false, Some(e.to_string())),
                }
            }
        }
    }
    Ok(r.finish())
}
