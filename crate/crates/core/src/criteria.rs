//! Decision procedures for the hypotheses that guarantee irreducibility and
//! complete normality of the iterated family.
//!
//! Each check returns a [`CaseVerdict`] carrying one [`Witness`] per
//! condition, so a caller can always see why a verdict came out the way it
//! did. These routines only test hypotheses; they never run the degree-
//! growing oracles beyond the first transform step.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{is_lth_power, mult_order, Field};
use crate::moebius::{eta, p_sigma, r_transform, Mat2, ProjPoint};
use crate::num;
use crate::poly::Poly;
use crate::verify::rabin_irreducible;

/// Which guarantee a verdict is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// `η(g;σ)` is not an `l`-th power for any prime `l | t`, so every
    /// iterate is irreducible.
    FamilyIrreducible,
    /// Linear seed `x - A` with `dc != 0`: every iterate is completely normal.
    LinearSeedCompletelyNormal,
    /// `g0(σ·∞) != 0` and the first iterate is irreducible, so every
    /// iterate is irreducible.
    FirstStepIrreducible,
    /// Seed `P_{σ⁻¹}(x^n - A)` with `dc != 0`: every iterate is completely
    /// normal.
    BinomialSeedCompletelyNormal,
    /// Normality of a root of `P_σ(x^n - A)`.
    TwistedBinomialNormal,
    /// Irreducibility of `x^t - A` from the order of `A`.
    BinomialIrreducible,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::FamilyIrreducible => "family_irreducible",
            Theorem::LinearSeedCompletelyNormal => "linear_seed_completely_normal",
            Theorem::FirstStepIrreducible => "first_step_irreducible",
            Theorem::BinomialSeedCompletelyNormal => "binomial_seed_completely_normal",
            Theorem::TwistedBinomialNormal => "twisted_binomial_normal",
            Theorem::BinomialIrreducible => "binomial_irreducible",
        }
    }

    /// Whether the theorem concludes complete normality of the family.
    pub fn gives_complete_normality(self) -> bool {
        matches!(
            self,
            Theorem::LinearSeedCompletelyNormal | Theorem::BinomialSeedCompletelyNormal
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// `ab = 0`
    AbZero,
    /// `ab != 0` and `bc/(ad)` is an `l`-th power for a relevant prime `l`.
    RatioPower,
    /// `ab != 0` and `d = -c`, with the theorem's side condition on `A`.
    AntiDiagonal,
    /// `a = 0`
    AZero,
    /// `c = 0`
    CZero,
    /// `ac != 0`
    AcNonzero,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::AbZero => "ab_zero",
            Case::RatioPower => "ratio_power",
            Case::AntiDiagonal => "anti_diagonal",
            Case::AZero => "a_zero",
            Case::CZero => "c_zero",
            Case::AcNonzero => "ac_nonzero",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Witness {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ok,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseVerdict {
    pub theorem: Theorem,
    pub holds: bool,
    /// Lowest applicable case, if any.
    pub case: Option<Case>,
    /// Every case whose conditions hold.
    pub cases: Vec<Case>,
    /// First step `k` from which the conclusion is guaranteed. The stated
    /// hypotheses of the complete-normality theorems only cover the seed
    /// itself in some cases; see [`check_main_theorem_case`] and
    /// [`check_teogen_case`].
    pub from_step: usize,
    pub witnesses: Vec<Witness>,
}

impl CaseVerdict {
    fn from_witnesses(theorem: Theorem, cases: Vec<Case>, witnesses: Vec<Witness>) -> Self {
        Self {
            theorem,
            holds: witnesses.iter().all(|w| w.ok),
            case: cases.first().copied(),
            cases,
            from_step: 0,
            witnesses,
        }
    }

    /// A failing verdict for a theorem whose check could not run, e.g.
    /// because a precondition such as `dc != 0` is violated.
    pub fn unmet(theorem: Theorem, err: &Error) -> Self {
        let name = match err {
            Error::PreconditionDcZero => "dc_nonzero",
            Error::ReducibleSeed => "seed_irreducible",
            Error::EtaUndefined(_) => "eta_defined",
            Error::MissingBinomialOrigin => "binomial_origin",
            _ => "precondition",
        };
        Self::from_witnesses(
            theorem,
            Vec::new(),
            vec![Witness::new(name, false, err.to_string())],
        )
    }

    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.name == name)
    }
}

/// Records `g0 = monic(P_{σ⁻¹}(x^n - A))`.
#[derive(Clone, Debug)]
pub struct BinomialOrigin<F: Field> {
    pub n: usize,
    pub a: F::Elem,
    /// `P_{σ⁻¹}(x^n - A)` before normalization.
    pub raw_g0: Poly<F>,
}

/// Everything needed to start an iteration.
#[derive(Clone, Debug)]
pub struct SeedSpec<F: Field> {
    pub sigma: Mat2<F>,
    pub t: usize,
    /// Monic.
    pub g0: Poly<F>,
    pub origin: Option<BinomialOrigin<F>>,
}

impl<F: Field> SeedSpec<F> {
    /// An explicit seed; `g0` is made monic.
    pub fn new(sigma: Mat2<F>, t: usize, g0: Poly<F>) -> Result<Self> {
        if t < 2 {
            return Err(Error::InvalidArgument(format!("t must be >= 2, got {t}")));
        }
        if g0.ctx() != sigma.ctx() {
            return Err(Error::CtxMismatch);
        }
        if g0.degree().is_none_or(|d| d == 0) {
            return Err(Error::InvalidArgument("seed must have degree >= 1".into()));
        }
        Ok(Self {
            g0: g0.monic(),
            sigma,
            t,
            origin: None,
        })
    }

    pub fn ctx(&self) -> &F {
        self.sigma.ctx()
    }

    pub fn degree(&self) -> usize {
        self.g0.degree().expect("seed is nonzero")
    }

    /// `A` when the seed is `x - A`.
    pub fn linear_root(&self) -> Option<F::Elem> {
        (self.degree() == 1).then(|| self.ctx().neg(&self.g0.coeff(0)))
    }
}

fn q_of<F: Field>(k: &F) -> Result<u64> {
    k.order_u64()
}

fn fmt_list(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// `q ≡ 3 mod 4` with `t` even forces the seed degree to be even.
fn parity_witness(q: u64, t: usize, n: usize) -> Witness {
    let needs = q % 4 == 3 && t.is_multiple_of(2);
    Witness::new(
        "parity",
        !needs || n.is_multiple_of(2),
        format!("q mod 4 = {}, t = {t}, deg g0 = {n}", q % 4),
    )
}

/// Hypotheses under which every iterate of the seed is irreducible, decided
/// through the residue element `η(g0;σ)`.
pub fn check_rsigma_seed<F: Field>(s: &SeedSpec<F>) -> Result<CaseVerdict> {
    let k = s.ctx();
    if !rabin_irreducible(&s.g0) {
        return Err(Error::ReducibleSeed);
    }
    let q = q_of(k)?;
    let n = s.degree();
    let eta_val = eta(&s.g0, &s.sigma)?;
    let t_primes = num::prime_factors(s.t as u64);

    let mut w = vec![Witness::new(
        "t_primes_divide_q_minus_1",
        t_primes.iter().all(|l| (q - 1) % l == 0),
        format!("primes of t = {}, q - 1 = {}", fmt_list(&t_primes), q - 1),
    )];
    w.push(parity_witness(q, s.t, n));
    let pole_ok = match s.sigma.pole_image() {
        ProjPoint::Finite(v) => n != 1 || s.g0 != Poly::binomial(k.clone(), 1, &v),
        ProjPoint::Infinity => true,
    };
    w.push(Witness::new(
        "g0_not_x_minus_a_over_c",
        pole_ok,
        format!("g0 = {}", s.g0),
    ));
    for &l in &t_primes {
        let (ok, detail) = if k.is_zero(&eta_val) {
            (false, "eta = 0".to_string())
        } else {
            let power = is_lth_power(k, &eta_val, l)?;
            (
                !power,
                format!(
                    "eta = {}, {}",
                    k.format(&eta_val),
                    if power { "is a power" } else { "not a power" }
                ),
            )
        };
        w.push(Witness::new(format!("eta_not_{l}th_power"), ok, detail));
    }
    Ok(CaseVerdict::from_witnesses(
        Theorem::FamilyIrreducible,
        Vec::new(),
        w,
    ))
}

/// The primes `l` in `primes` for which `bc/(ad)` is an `l`-th power;
/// empty when `ab = 0` or `dc = 0`.
fn ratio_power_primes<F: Field>(sigma: &Mat2<F>, primes: &[u64]) -> Result<Vec<u64>> {
    let k = sigma.ctx();
    let ad = k.mul(sigma.a(), sigma.d());
    let bc = k.mul(sigma.b(), sigma.c());
    if k.is_zero(&ad) || k.is_zero(&bc) {
        return Ok(Vec::new());
    }
    let ratio = k.div(&bc, &ad)?;
    let mut out = Vec::new();
    for &l in primes {
        if is_lth_power(k, &ratio, l)? {
            out.push(l);
        }
    }
    Ok(out)
}

fn describe_ratio<F: Field>(sigma: &Mat2<F>) -> String {
    let k = sigma.ctx();
    let ad = k.mul(sigma.a(), sigma.d());
    match k.div(&k.mul(sigma.b(), sigma.c()), &ad) {
        Ok(r) => format!("bc/ad = {}", k.format(&r)),
        Err(_) => "ad = 0".into(),
    }
}

fn cases_witness(cases: &[Case]) -> Witness {
    let names: Vec<&str> = cases.iter().map(|c| c.name()).collect();
    Witness::new(
        "some_case_applies",
        !cases.is_empty(),
        format!("cases = [{}]", names.join(", ")),
    )
}

/// Complete normality of every iterate of a linear seed `x - A`.
///
/// Requires `dc != 0`; the family must also satisfy
/// [`check_rsigma_seed`], which is folded in as a witness.
pub fn check_main_theorem_case<F: Field>(s: &SeedSpec<F>) -> Result<CaseVerdict> {
    let k = s.ctx();
    let sigma = &s.sigma;
    let big_a = s
        .linear_root()
        .ok_or_else(|| Error::InvalidArgument("seed must be linear".into()))?;
    if k.is_zero(&k.mul(sigma.d(), sigma.c())) {
        return Err(Error::PreconditionDcZero);
    }
    let irreducible = check_rsigma_seed(s)?;
    let mut w = vec![Witness::new(
        "family_irreducible",
        irreducible.holds,
        failing_names(&irreducible),
    )];
    let minus_a_over_c = k.neg(&k.div(sigma.a(), sigma.c())?);
    w.push(Witness::new(
        "a_ne_minus_a_over_c",
        big_a != minus_a_over_c,
        format!(
            "A = {}, -a/c = {}",
            k.format(&big_a),
            k.format(&minus_a_over_c)
        ),
    ));

    let ab_zero = k.is_zero(&k.mul(sigma.a(), sigma.b()));
    let t_primes = num::prime_factors(s.t as u64);
    let mut cases = Vec::new();
    if ab_zero {
        cases.push(Case::AbZero);
    } else {
        if !ratio_power_primes(sigma, &t_primes)?.is_empty() {
            cases.push(Case::RatioPower);
        }
        if *sigma.d() == k.neg(sigma.c()) && !k.is_zero(&big_a) {
            cases.push(Case::AntiDiagonal);
        }
    }
    w.push(cases_witness(&cases));
    w.push(Witness::new("ratio", true, describe_ratio(sigma)));
    let mut v = CaseVerdict::from_witnesses(Theorem::LinearSeedCompletelyNormal, cases, w);
    // g0 = x has the non-normal root 0; the hypotheses allow A = 0 in the
    // ratio case, so the guarantee starts at g1 there
    v.from_step = usize::from(k.is_zero(&big_a));
    Ok(v)
}

fn failing_names(v: &CaseVerdict) -> String {
    let failed: Vec<&str> = v
        .witnesses
        .iter()
        .filter(|w| !w.ok)
        .map(|w| w.name.as_str())
        .collect();
    if failed.is_empty() {
        "all hypotheses hold".into()
    } else {
        format!("failed: {}", failed.join(", "))
    }
}

/// Hypotheses under which every iterate is irreducible, decided by
/// computing the first iterate.
pub fn check_rtgen_seed<F: Field>(s: &SeedSpec<F>) -> Result<CaseVerdict> {
    let k = s.ctx();
    if !rabin_irreducible(&s.g0) {
        return Err(Error::ReducibleSeed);
    }
    let q = q_of(k)?;
    let n = s.degree();
    let mut w = vec![parity_witness(q, s.t, n)];
    let (pole_ok, pole_detail) = match s.sigma.pole_image() {
        ProjPoint::Finite(v) => {
            let val = s.g0.eval(&v);
            (
                !k.is_zero(&val),
                format!("g0({}) = {}", k.format(&v), k.format(&val)),
            )
        }
        ProjPoint::Infinity => (true, "σ·∞ = ∞".into()),
    };
    w.push(Witness::new("g0_nonzero_at_pole", pole_ok, pole_detail));
    let (g1_ok, g1_detail) = match r_transform(&s.sigma, s.t, &s.g0) {
        Ok(g1) => {
            let irr = rabin_irreducible(&g1);
            (irr, format!("deg g1 = {}", n * s.t))
        }
        Err(e) => (false, format!("g1 not computed: {e}")),
    };
    w.push(Witness::new("g1_irreducible", g1_ok, g1_detail));
    Ok(CaseVerdict::from_witnesses(
        Theorem::FirstStepIrreducible,
        Vec::new(),
        w,
    ))
}

/// Complete normality of every iterate of `g0 = P_{σ⁻¹}(x^n - A)`.
pub fn check_teogen_case<F: Field>(s: &SeedSpec<F>) -> Result<CaseVerdict> {
    let k = s.ctx();
    let sigma = &s.sigma;
    let origin = s.origin.as_ref().ok_or(Error::MissingBinomialOrigin)?;
    if k.is_zero(&k.mul(sigma.d(), sigma.c())) {
        return Err(Error::PreconditionDcZero);
    }
    let q = q_of(k)?;
    let big_a = &origin.a;
    let mut w = vec![Witness::new(
        "binomial_irreducible",
        binomial_irreducible(k, origin.n as u64, big_a)?,
        format!("x^{} - {}", origin.n, k.format(big_a)),
    )];
    w.push(Witness::new(
        "t_even_implies_q_1_mod_4",
        s.t % 2 == 1 || q % 4 == 1,
        format!("t = {}, q mod 4 = {}", s.t, q % 4),
    ));
    let seed = check_rtgen_seed(s)?;
    w.push(Witness::new(
        "family_irreducible",
        seed.holds,
        failing_names(&seed),
    ));

    let ab_zero = k.is_zero(&k.mul(sigma.a(), sigma.b()));
    let tn_primes = num::prime_factors((s.t * origin.n) as u64);
    let mut cases = Vec::new();
    let mut ratio_primes = Vec::new();
    if ab_zero {
        cases.push(Case::AbZero);
    } else {
        ratio_primes = ratio_power_primes(sigma, &tn_primes)?;
        if !ratio_primes.is_empty() {
            cases.push(Case::RatioPower);
        }
        let minus_b_over_a = k.neg(&k.div(sigma.b(), sigma.a())?);
        if *sigma.d() == k.neg(sigma.c()) && *big_a != minus_b_over_a {
            cases.push(Case::AntiDiagonal);
        }
    }
    w.push(cases_witness(&cases));
    w.push(Witness::new("ratio", true, describe_ratio(sigma)));
    // Normality of g_k over F_q needs A != (-d/c)^(n t^k) bc/(ad). In the
    // ratio case the right side is an l-th power only when l divides
    // n t^k, which for k = 0 requires l | n.
    let seed_covered = cases.iter().any(|&c| c != Case::RatioPower)
        || ratio_primes
            .iter()
            .any(|&l| (origin.n as u64).is_multiple_of(l));
    let mut v = CaseVerdict::from_witnesses(Theorem::BinomialSeedCompletelyNormal, cases, w);
    v.from_step = usize::from(!seed_covered);
    Ok(v)
}

/// Every theorem whose shape fits the seed, each checked; a check that
/// cannot run becomes a failing verdict naming the unmet precondition.
pub fn applicable_verdicts<F: Field>(s: &SeedSpec<F>) -> Vec<CaseVerdict> {
    let or_unmet =
        |theorem, r: Result<CaseVerdict>| r.unwrap_or_else(|e| CaseVerdict::unmet(theorem, &e));
    let linear = s.degree() == 1;
    let mut out = Vec::new();
    if linear || s.origin.is_none() {
        out.push(or_unmet(Theorem::FamilyIrreducible, check_rsigma_seed(s)));
    }
    if linear {
        out.push(or_unmet(
            Theorem::LinearSeedCompletelyNormal,
            check_main_theorem_case(s),
        ));
    }
    out.push(or_unmet(Theorem::FirstStepIrreducible, check_rtgen_seed(s)));
    if s.origin.is_some() {
        out.push(or_unmet(
            Theorem::BinomialSeedCompletelyNormal,
            check_teogen_case(s),
        ));
    }
    out
}

/// The order-based irreducibility criterion for `x^t - A`, with witnesses.
pub fn binomial_verdict<F: Field>(k: &F, t: u64, a: &F::Elem) -> Result<CaseVerdict> {
    if k.is_zero(a) {
        return Err(Error::ZeroConstant);
    }
    if t == 0 {
        return Err(Error::InvalidArgument("t must be >= 1".into()));
    }
    let q = q_of(k)?;
    let e = mult_order(k, a)?;
    let cofactor = (q - 1) / e;
    let primes = num::prime_factors(t);
    let w = vec![
        Witness::new(
            "t_coprime_to_cofactor",
            num::gcd(t, cofactor) == 1,
            format!("ord(A) = {e}, (q-1)/e = {cofactor}"),
        ),
        Witness::new(
            "primes_of_t_divide_order",
            primes.iter().all(|l| e % l == 0),
            format!("primes of t = {}, ord(A) = {e}", fmt_list(&primes)),
        ),
        Witness::new(
            "four_divides_t_implies_four_divides_q_minus_1",
            !t.is_multiple_of(4) || (q - 1) % 4 == 0,
            format!("t = {t}, q - 1 = {}", q - 1),
        ),
    ];
    Ok(CaseVerdict::from_witnesses(
        Theorem::BinomialIrreducible,
        Vec::new(),
        w,
    ))
}

pub fn binomial_irreducible<F: Field>(k: &F, t: u64, a: &F::Elem) -> Result<bool> {
    Ok(binomial_verdict(k, t, a)?.holds)
}

/// Builds the seed `monic(P_{σ⁻¹}(x^n - A))`, requiring `x^(nt) - A`
/// irreducible and `x^n - A` nonvanishing at `σ⁻¹·∞`.
pub fn build_seed_from_binomial<F: Field>(
    sigma: &Mat2<F>,
    t: usize,
    n: usize,
    a: &F::Elem,
) -> Result<SeedSpec<F>> {
    let k = sigma.ctx();
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let nt = (n * t) as u64;
    if !binomial_irreducible(k, nt, a)? {
        return Err(Error::BinomialReducible { n: nt });
    }
    let inv = sigma.inverse();
    let f0 = Poly::binomial(k.clone(), n, a);
    if let ProjPoint::Finite(v) = inv.pole_image() {
        if k.is_zero(&f0.eval(&v)) {
            return Err(Error::PoleClash);
        }
    }
    let raw_g0 = p_sigma(&inv, &f0)?;
    let mut seed = SeedSpec::new(sigma.clone(), t, raw_g0.clone())?;
    seed.origin = Some(BinomialOrigin {
        n,
        a: a.clone(),
        raw_g0,
    });
    Ok(seed)
}

/// Whether `q` generates `(Z/p)^*`.
pub fn is_primitive_root(q: u64, p: u64) -> Result<bool> {
    if !num::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    let ord = num::order_mod(q, p).ok_or(Error::NotCoprime { n: p, q })?;
    Ok(ord == p - 1)
}

/// Normality of a root of `g = P_σ(x^n - A)` (`n >= 2`) decided from the
/// entries of `σ`:
///
/// * `a = 0`: normal iff `d != 0`, `n` is a prime `p`, and `q` is a
///   primitive root mod `p`;
/// * `c = 0`: the same with `b != 0` in place of `d != 0`;
/// * `ac != 0`: normal iff `c^(n-1) d A - b a^(n-1) != 0`.
pub fn main_lemma_normal<F: Field>(sigma: &Mat2<F>, n: usize, a: &F::Elem) -> Result<CaseVerdict> {
    let k = sigma.ctx();
    if n < 2 {
        return Err(Error::InvalidArgument("n must be >= 2".into()));
    }
    if k.is_zero(a) || !binomial_irreducible(k, n as u64, a)? {
        return Err(Error::BinomialReducible { n: n as u64 });
    }
    let q = q_of(k)?;
    let (sa, sb, sc, sd) = (sigma.a(), sigma.b(), sigma.c(), sigma.d());
    let prime_witnesses = |nonzero_name: &str, nonzero: &F::Elem| -> Result<Vec<Witness>> {
        let n_prime = num::is_prime(n as u64);
        let prim = n_prime && is_primitive_root(q, n as u64)?;
        Ok(vec![
            Witness::new(nonzero_name, !k.is_zero(nonzero), k.format(nonzero)),
            Witness::new("n_prime", n_prime, format!("n = {n}")),
            Witness::new(
                "q_primitive_root_mod_n",
                prim,
                format!("ord of {q} mod {n} = {:?}", num::order_mod(q, n as u64)),
            ),
        ])
    };
    let (case, w) = if k.is_zero(sa) {
        (Case::AZero, prime_witnesses("d_nonzero", sd)?)
    } else if k.is_zero(sc) {
        (Case::CZero, prime_witnesses("b_nonzero", sb)?)
    } else {
        let e = (n - 1) as u128;
        let lhs = k.mul(&k.mul(&k.pow(sc, e), sd), a);
        let rhs = k.mul(sb, &k.pow(sa, e));
        let v = k.sub(&lhs, &rhs);
        (
            Case::AcNonzero,
            vec![Witness::new(
                "c^(n-1)dA - ba^(n-1) != 0",
                !k.is_zero(&v),
                format!("value = {}", k.format(&v)),
            )],
        )
    };
    Ok(CaseVerdict::from_witnesses(
        Theorem::TwistedBinomialNormal,
        vec![case],
        w,
    ))
}

/// Trace over `F_q` of a root of `P_σ(x^n - A)`:
/// `n (c^(n-1) d A - b a^(n-1)) / (a^n - c^n A)`.
pub fn trace_of_psigma_root<F: Field>(sigma: &Mat2<F>, n: usize, a: &F::Elem) -> Result<F::Elem> {
    let k = sigma.ctx();
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let (sa, sb, sc, sd) = (sigma.a(), sigma.b(), sigma.c(), sigma.d());
    let nn = n as u128;
    let denom = k.sub(&k.pow(sa, nn), &k.mul(&k.pow(sc, nn), a));
    if k.is_zero(&denom) {
        return Err(Error::DegenerateDenominator);
    }
    let num = k.sub(
        &k.mul(&k.mul(&k.pow(sc, nn - 1), sd), a),
        &k.mul(sb, &k.pow(sa, nn - 1)),
    );
    let n_elem = k.from_i64(n as i64);
    Ok(k.mul(&n_elem, &k.div(&num, &denom)?))
}
