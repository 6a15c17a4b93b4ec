//! The calculus engine.
//!
//! A normally ordered monomial `:∂^{k1}g1 ⋯ ∂^{km}gm:` is stored as the PBW state
//! `g1_(−k1−1) ⋯ gm_(−km−1)|0⟩`, with modes sorted in the registry order. Circle
//! products are evaluated as `a∘_n b = a_(n) b`: a single generator mode is moved
//! through the state with the commutator formula, and modes of a composite field
//! are expanded by the normally ordered product formula. The state may also sit
//! on a Fock vacuum `|λ⟩` of nonzero momentum, which is how exponential fields
//! enter.

use super::expr::FieldExpr;
use super::table::{GenId, GeneratorSymbol, GeneratorTable, PairOpe, StaticTable, Weight};
use crate::coeff::{binom, falling, RatFunc};
use crate::error::{Error, Result};
use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

/// The mode `gen_(idx)`; creation modes have `idx ≤ −1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mode {
    pub gen: GenId,
    pub idx: i32,
}

impl Mode {
    pub fn letter(gen: GenId, deriv: u32) -> Self {
        Mode { gen, idx: -(deriv as i32) - 1 }
    }

    pub fn deriv(&self) -> u32 {
        (-self.idx - 1) as u32
    }
}

pub type Mono = Arc<[Mode]>;
pub(crate) type Terms = Vec<(Mono, RatFunc)>;
pub type VacId = u32;
/// Momentum `λ = Σ c_b φ_b`, keyed by the generator `∂φ_b`.
pub type Momentum = Vec<(GenId, RatFunc)>;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) struct Acc {
    map: HashMap<Mono, RatFunc>,
}

impl Acc {
    pub(crate) fn new() -> Self {
        Acc { map: HashMap::new() }
    }

    pub(crate) fn add(&mut self, m: &Mono, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(m) {
            Some(x) => *x += c,
            None => {
                self.map.insert(m.clone(), c.clone());
            }
        }
    }

    pub(crate) fn add_terms(&mut self, t: &Terms, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        for (m, x) in t {
            if c.is_one() {
                self.add(m, x);
            } else {
                self.add(m, &(x * c));
            }
        }
    }

    pub(crate) fn finish(self) -> Terms {
        let mut v: Terms = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub(crate) fn finish_map(self) -> BTreeMap<Mono, RatFunc> {
        self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

fn rq(x: BigRational) -> RatFunc {
    RatFunc::from_rational(x)
}

pub struct Algebra {
    id: u64,
    tag: String,
    table: Box<dyn GeneratorTable>,
    unit: i64,
    interner: DashMap<Mono, ()>,
    empty: Mono,
    pairs: DashMap<(GenId, GenId), Arc<PairOpe>>,
    vacua: RwLock<Vec<Momentum>>,
    vac_index: DashMap<Momentum, VacId>,
    apply_cache: DashMap<(Mode, Mono, VacId), Arc<Terms>>,
    fmode_cache: DashMap<(Mono, i32, Mono, VacId), Arc<Terms>>,
    deriv_cache: DashMap<(Mono, VacId), Arc<Terms>>,
}

pub type AlgebraHandle = Arc<Algebra>;

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra({})", self.tag)
    }
}

impl Algebra {
    pub fn new(tag: &str, table: Box<dyn GeneratorTable>) -> AlgebraHandle {
        let unit = table.weight_unit();
        let empty: Mono = Arc::from(Vec::new());
        let interner = DashMap::new();
        interner.insert(empty.clone(), ());
        let vac_index = DashMap::new();
        vac_index.insert(Vec::new(), 0);
        Arc::new(Algebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            tag: tag.to_string(),
            table,
            unit,
            interner,
            empty,
            pairs: DashMap::new(),
            vacua: RwLock::new(vec![Vec::new()]),
            vac_index,
            apply_cache: DashMap::new(),
            fmode_cache: DashMap::new(),
            deriv_cache: DashMap::new(),
        })
    }

    /// Register a finite algebra from generators and one orientation of each singular pair.
    pub fn register(
        tag: &str,
        generators: Vec<GeneratorSymbol>,
        pair_opes: Vec<(GenId, GenId, PairOpe)>,
    ) -> Result<AlgebraHandle> {
        Ok(Algebra::new(tag, Box::new(StaticTable::new(generators, pair_opes)?)))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn table(&self) -> &dyn GeneratorTable {
        &*self.table
    }

    pub fn symbol(&self, g: GenId) -> GeneratorSymbol {
        self.table.symbol(g).expect("generator id from this registry")
    }

    pub fn lookup(&self, label: &str) -> Result<GenId> {
        self.table.lookup(label).ok_or_else(|| Error::UnknownGenerator(label.to_string()))
    }

    pub fn is_odd(&self, g: GenId) -> bool {
        self.table.odd(g)
    }

    pub fn pair(&self, a: GenId, b: GenId) -> Result<Arc<PairOpe>> {
        if let Some(p) = self.pairs.get(&(a, b)) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.table.pair(a, b)?);
        Ok(self.pairs.entry((a, b)).or_insert(p).clone())
    }

    pub(crate) fn intern(&self, modes: &[Mode]) -> Mono {
        if let Some(e) = self.interner.get(modes) {
            return e.key().clone();
        }
        let m: Mono = Arc::from(modes.to_vec());
        self.interner.entry(m.clone()).or_insert(());
        self.interner.get(modes).map(|e| e.key().clone()).unwrap_or(m)
    }

    pub(crate) fn empty_mono(&self) -> Mono {
        self.empty.clone()
    }

    pub fn vacuum_id(&self, momentum: &Momentum) -> VacId {
        let mut m: Momentum = momentum.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        m.sort_by_key(|(g, _)| *g);
        if let Some(v) = self.vac_index.get(&m) {
            return *v;
        }
        let mut vs = self.vacua.write().unwrap();
        if let Some(v) = self.vac_index.get(&m) {
            return *v;
        }
        let id = vs.len() as VacId;
        vs.push(m.clone());
        self.vac_index.insert(m, id);
        id
    }

    pub fn momentum(&self, vac: VacId) -> Momentum {
        self.vacua.read().unwrap()[vac as usize].clone()
    }

    // ---- weights, in units of 1/unit ----

    pub(crate) fn gen_units(&self, g: GenId) -> i64 {
        self.table.weight_units(g)
    }

    pub(crate) fn mode_units(&self, m: Mode) -> i64 {
        self.table.weight_units(m.gen) - self.unit * (m.idx as i64 + 1)
    }

    pub(crate) fn mono_units(&self, v: &[Mode]) -> i64 {
        v.iter().map(|m| self.mode_units(*m)).sum()
    }

    pub(crate) fn mono_odd(&self, v: &[Mode]) -> bool {
        v.iter().filter(|m| self.table.odd(m.gen)).count() % 2 == 1
    }

    pub fn units_to_weight(&self, u: i64) -> Weight {
        Weight::new(u, self.unit)
    }

    // ---- core recursion ----

    fn single(&self, m: Mono, c: RatFunc) -> Arc<Terms> {
        Arc::new(vec![(m, c)])
    }

    fn nothing() -> Arc<Terms> {
        Arc::new(Vec::new())
    }

    /// Zero-mode eigenvalue of a generator on the vacuum `vac`.
    fn eigen(&self, g: GenId, vac: VacId) -> Result<RatFunc> {
        if vac == 0 {
            return Ok(RatFunc::zero());
        }
        let mom = self.momentum(vac);
        let mut acc = RatFunc::zero();
        for (h, c) in &mom {
            let p = self.pair(g, *h)?;
            if let Some(f) = p.poles.get(1) {
                acc += &(&f.scalar * c);
            }
        }
        Ok(acc)
    }

    /// `g_(p) v` for a single generator mode.
    pub(crate) fn apply(&self, m: Mode, v: &Mono, vac: VacId) -> Result<Arc<Terms>> {
        let p = m.idx;
        if p >= 0 && self.mode_units(m) + self.mono_units(v) < 0 {
            return Ok(Self::nothing());
        }
        if v.is_empty() {
            if p <= -1 {
                return Ok(self.single(self.intern(&[m]), RatFunc::one()));
            }
            if p == 0 {
                let e = self.eigen(m.gen, vac)?;
                return Ok(if e.is_zero() { Self::nothing() } else { self.single(self.empty_mono(), e) });
            }
            return Ok(Self::nothing());
        }
        let h = v[0];
        if p <= -1 && m <= h {
            if m == h && self.table.odd(m.gen) {
                return Ok(Self::nothing());
            }
            let mut w = Vec::with_capacity(v.len() + 1);
            w.push(m);
            w.extend_from_slice(v);
            return Ok(self.single(self.intern(&w), RatFunc::one()));
        }
        let key = (m, v.clone(), vac);
        if let Some(r) = self.apply_cache.get(&key) {
            return Ok(r.clone());
        }
        let rest = self.intern(&v[1..]);
        let sign = if self.table.odd(m.gen) && self.table.odd(h.gen) { RatFunc::from_int(-1) } else { RatFunc::one() };
        let mut acc = Acc::new();
        let t = self.apply(m, &rest, vac)?;
        for (u, c) in t.iter() {
            let t2 = self.apply(h, u, vac)?;
            acc.add_terms(&t2, &(c * &sign));
        }
        let pr = self.pair(m.gen, h.gen)?;
        for (j, field) in pr.poles.iter().enumerate() {
            let b = binom(p as i64, j as u32);
            if b.is_zero() {
                continue;
            }
            let r = p + h.idx - j as i32;
            if r == -1 && !field.scalar.is_zero() {
                acc.add(&rest, &field.scalar.scale_rational(&b));
            }
            for (f, i, c) in &field.terms {
                let ff = falling(r as i64, *i);
                if ff.is_zero() {
                    continue;
                }
                let ff = if i % 2 == 1 { -ff } else { ff };
                let coef = c.scale_rational(&(&b * BigRational::from_integer(ff)));
                let t3 = self.apply(Mode { gen: *f, idx: r - *i as i32 }, &rest, vac)?;
                acc.add_terms(&t3, &coef);
            }
        }
        let res = Arc::new(acc.finish());
        self.apply_cache.insert(key, res.clone());
        Ok(res)
    }

    /// `(letter)_(n) v`, where the letter `g_(−k−1)|0⟩ = ∂^k g / k!`.
    fn letter_mode(&self, a: Mode, n: i32, v: &Mono, vac: VacId) -> Result<Arc<Terms>> {
        let k = a.deriv();
        let mut c = binom(n as i64, k);
        if c.is_zero() {
            return Ok(Self::nothing());
        }
        if k % 2 == 1 {
            c = -c;
        }
        let t = self.apply(Mode { gen: a.gen, idx: n - k as i32 }, v, vac)?;
        if c.is_one() {
            return Ok(t);
        }
        let c = rq(c);
        Ok(Arc::new(t.iter().map(|(m, x)| (m.clone(), x * &c)).collect()))
    }

    /// `F_(n) v` for the field `F` of the PBW state `f`.
    pub(crate) fn fmode(&self, f: &Mono, n: i32, v: &Mono, vac: VacId) -> Result<Arc<Terms>> {
        if f.is_empty() {
            return Ok(if n == -1 { self.single(v.clone(), RatFunc::one()) } else { Self::nothing() });
        }
        let fu = self.mono_units(f);
        let vu = self.mono_units(v);
        if fu + vu - self.unit * (n as i64 + 1) < 0 {
            return Ok(Self::nothing());
        }
        if f.len() == 1 {
            return self.letter_mode(f[0], n, v, vac);
        }
        let key = (f.clone(), n, v.clone(), vac);
        if let Some(r) = self.fmode_cache.get(&key) {
            return Ok(r.clone());
        }
        let a = f[0];
        let rest = self.intern(&f[1..]);
        let ru = self.mono_units(&rest);
        let au = self.mode_units(a);
        let mut acc = Acc::new();
        // Σ_{j≥0} a_(−1−j) rest_(n+j) v
        let mut j = 0i32;
        while ru + vu - self.unit * ((n + j) as i64 + 1) >= 0 {
            let t = self.fmode(&rest, n + j, v, vac)?;
            for (u, c) in t.iter() {
                let t2 = self.letter_mode(a, -1 - j, u, vac)?;
                acc.add_terms(&t2, c);
            }
            j += 1;
        }
        // ± Σ_{j≥0} rest_(n−1−j) a_(j) v
        let sign = if self.table.odd(a.gen) && self.mono_odd(&rest) { RatFunc::from_int(-1) } else { RatFunc::one() };
        let mut j = 0i32;
        while au + vu - self.unit * (j as i64 + 1) >= 0 {
            let t = self.letter_mode(a, j, v, vac)?;
            for (u, c) in t.iter() {
                let t2 = self.fmode(&rest, n - 1 - j, u, vac)?;
                acc.add_terms(&t2, &(c * &sign));
            }
            j += 1;
        }
        let res = Arc::new(acc.finish());
        self.fmode_cache.insert(key, res.clone());
        Ok(res)
    }

    /// `∂` of a state.
    pub(crate) fn dstate(&self, v: &Mono, vac: VacId) -> Result<Arc<Terms>> {
        if v.is_empty() {
            if vac == 0 {
                return Ok(Self::nothing());
            }
            let mut acc = Acc::new();
            for (h, c) in self.momentum(vac) {
                let t = self.apply(Mode { gen: h, idx: -1 }, v, vac)?;
                acc.add_terms(&t, &c);
            }
            return Ok(Arc::new(acc.finish()));
        }
        let key = (v.clone(), vac);
        if let Some(r) = self.deriv_cache.get(&key) {
            return Ok(r.clone());
        }
        let m = v[0];
        let rest = self.intern(&v[1..]);
        let mut acc = Acc::new();
        let t = self.apply(Mode { gen: m.gen, idx: m.idx - 1 }, &rest, vac)?;
        acc.add_terms(&t, &RatFunc::from_int(-(m.idx as i64)));
        let d = self.dstate(&rest, vac)?;
        for (u, c) in d.iter() {
            let t2 = self.apply(m, u, vac)?;
            acc.add_terms(&t2, c);
        }
        let res = Arc::new(acc.finish());
        self.deriv_cache.insert(key, res.clone());
        Ok(res)
    }

    // ---- public field-level API ----

    pub fn gen(self: &Arc<Self>, label: &str) -> Result<FieldExpr> {
        let g = self.lookup(label)?;
        Ok(self.gen_id(g))
    }

    pub fn gen_id(self: &Arc<Self>, g: GenId) -> FieldExpr {
        let m = self.intern(&[Mode::letter(g, 0)]);
        FieldExpr::from_terms(self, 0, vec![(m, RatFunc::one())])
    }

    pub fn one(self: &Arc<Self>) -> FieldExpr {
        FieldExpr::from_terms(self, 0, vec![(self.empty_mono(), RatFunc::one())])
    }

    pub fn zero(self: &Arc<Self>) -> FieldExpr {
        FieldExpr::from_terms(self, 0, vec![])
    }

    pub fn scalar(self: &Arc<Self>, c: RatFunc) -> FieldExpr {
        FieldExpr::from_terms(self, 0, vec![(self.empty_mono(), c)])
    }

    /// The state `e^λ` of the Fock vacuum with momentum `λ`.
    pub fn exponential(self: &Arc<Self>, momentum: &Momentum) -> FieldExpr {
        let vac = self.vacuum_id(momentum);
        FieldExpr::from_terms(self, vac, vec![(self.empty_mono(), RatFunc::one())])
    }

    fn check(&self, a: &FieldExpr) -> Result<()> {
        if a.algebra().id() != self.id {
            return Err(Error::MixedAlgebra);
        }
        Ok(())
    }

    /// `a∘_n b` for any integer `n`.
    pub fn circle(self: &Arc<Self>, a: &FieldExpr, b: &FieldExpr, n: i32) -> Result<FieldExpr> {
        self.check(a)?;
        self.check(b)?;
        if a.vac() != 0 {
            return Err(Error::InvalidArgument("left operand must lie in the vacuum module".into()));
        }
        let vac = b.vac();
        let mut acc = Acc::new();
        for (fa, ca) in a.raw_terms() {
            for (vb, cb) in b.raw_terms() {
                let t = self.fmode(fa, n, vb, vac)?;
                if t.is_empty() {
                    continue;
                }
                let expect = self.mono_units(fa) + self.mono_units(vb) - self.unit * (n as i64 + 1);
                for (m, _) in t.iter() {
                    if self.mono_units(m) != expect {
                        return Err(Error::Internal(format!("weight not additive in {}∘{}", self.tag, n)));
                    }
                }
                acc.add_terms(&t, &(ca * cb));
            }
        }
        Ok(FieldExpr::from_map(self, vac, acc.finish_map()))
    }

    pub fn wick(self: &Arc<Self>, a: &FieldExpr, b: &FieldExpr) -> Result<FieldExpr> {
        self.circle(a, b, -1)
    }

    /// Right-nested Wick product `:f1 (f2 (⋯ fm)):`.
    pub fn nprod(self: &Arc<Self>, factors: &[FieldExpr]) -> Result<FieldExpr> {
        let mut it = factors.iter().rev();
        let mut acc = match it.next() {
            None => return Ok(self.one()),
            Some(x) => x.clone(),
        };
        for f in it {
            acc = self.wick(f, &acc)?;
        }
        Ok(acc)
    }

    pub fn derivative(self: &Arc<Self>, a: &FieldExpr) -> Result<FieldExpr> {
        self.check(a)?;
        let mut acc = Acc::new();
        for (m, c) in a.raw_terms() {
            let t = self.dstate(m, a.vac())?;
            acc.add_terms(&t, c);
        }
        Ok(FieldExpr::from_map(self, a.vac(), acc.finish_map()))
    }

    pub fn derivative_n(self: &Arc<Self>, a: &FieldExpr, m: u32) -> Result<FieldExpr> {
        let mut x = a.clone();
        for _ in 0..m {
            x = self.derivative(&x)?;
        }
        Ok(x)
    }

    /// Singular part: pole order `n+1 ↦ a∘_n b` for the nonzero `n ≥ 0`.
    pub fn ope(self: &Arc<Self>, a: &FieldExpr, b: &FieldExpr) -> Result<OpeResult> {
        let top = match (a.max_units(), b.max_units()) {
            (Some(x), Some(y)) => (x + y).div_euclid(self.unit),
            _ => -1,
        };
        let mut poles = BTreeMap::new();
        for n in 0..top.max(0) as i32 {
            let c = self.circle(a, b, n)?;
            if !c.is_zero() {
                poles.insert(n as u32 + 1, c);
            }
        }
        if let (Some(wa), Some(wb)) = (a.weight_units(), b.weight_units()) {
            let bound = (wa + wb).div_euclid(self.unit);
            if let Some((&order, _)) = poles.iter().next_back() {
                if order as i64 > bound.max(0) {
                    return Err(Error::PoleBound { order: order as i64, bound });
                }
            }
        }
        Ok(OpeResult { poles })
    }

    /// Canonical PBW basis of the weight-`w` subspace.
    pub fn weight_basis(self: &Arc<Self>, w: Weight) -> Result<Vec<FieldExpr>> {
        if w < Weight::zero() {
            return Err(Error::InvalidArgument("negative weight".into()));
        }
        let target = (w * Weight::from_integer(self.unit)).to_integer();
        if Weight::new(target, self.unit) != w {
            return Ok(Vec::new());
        }
        let mut letters: Vec<Mode> = Vec::new();
        for g in self.table.generators_up_to(w) {
            let gu = self.gen_units(g);
            if gu == 0 && !self.table.odd(g) {
                return Err(Error::InvalidArgument("even generator of weight zero".into()));
            }
            let mut k = 0u32;
            while gu + self.unit * k as i64 <= target {
                letters.push(Mode::letter(g, k));
                k += 1;
            }
        }
        letters.sort();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(&letters, 0, target, &mut cur, &mut out);
        Ok(out
            .into_iter()
            .map(|modes| FieldExpr::from_terms(self, 0, vec![(self.intern(&modes), RatFunc::one())]))
            .collect())
    }

    fn enumerate(&self, letters: &[Mode], start: usize, left: i64, cur: &mut Vec<Mode>, out: &mut Vec<Vec<Mode>>) {
        if left == 0 {
            out.push(cur.clone());
        }
        for i in start..letters.len() {
            let l = letters[i];
            let u = self.mode_units(l);
            if u > left {
                continue;
            }
            cur.push(l);
            let next = if self.table.odd(l.gen) { i + 1 } else { i };
            self.enumerate(letters, next, left - u, cur, out);
            cur.pop();
        }
    }
}

/// Poles of an operator product, keyed by pole order `n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpeResult {
    pub poles: BTreeMap<u32, FieldExpr>,
}

impl OpeResult {
    pub fn pole(&self, order: u32) -> Option<&FieldExpr> {
        self.poles.get(&order)
    }

    pub fn is_regular(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn max_order(&self) -> u32 {
        self.poles.keys().next_back().copied().unwrap_or(0)
    }
}
