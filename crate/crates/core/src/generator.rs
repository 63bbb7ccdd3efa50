//! Streaming iteration of `g_{k+1} = R_{σ,t}(g_k)` with per-step checks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::criteria::{CaseVerdict, SeedSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf::Field;
use crate::moebius::{p_sigma, r_transform};
use crate::poly::Poly;
use crate::verify::{is_completely_normal_with, rabin_irreducible, QuotientRing};

/// Largest degree accepted for complete-normality checks.
pub const FULL_DEGREE_LIMIT: u64 = 512;
/// Largest degree accepted for irreducibility checks.
pub const FAST_DEGREE_LIMIT: u64 = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VerifyLevel {
    /// Structural invariants only.
    None,
    /// Adds the irreducibility oracle.
    #[default]
    Fast,
    /// Adds the complete-normality oracle.
    Full,
}

impl VerifyLevel {
    fn limit(self) -> Option<(u64, &'static str)> {
        match self {
            VerifyLevel::None => None,
            VerifyLevel::Fast => Some((FAST_DEGREE_LIMIT, "fast verification")),
            VerifyLevel::Full => Some((FULL_DEGREE_LIMIT, "full verification")),
        }
    }
}

/// One step of a generated family.
#[derive(Clone, Debug)]
pub struct SeqReport<F: Field> {
    pub k: usize,
    /// Monic.
    pub g: Poly<F>,
    pub degree: usize,
    /// Leading coefficient of the step before normalization.
    pub scalar: F::Elem,
    pub checks: BTreeMap<String, bool>,
    pub timing_ms: f64,
    /// Seed verdicts; only present on the report for `k = 0`.
    pub verdicts: Vec<CaseVerdict>,
}

impl<F: Field> SeqReport<F> {
    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    /// Recovers `g` from a serialized report.
    pub fn poly_from_json(ctx: F, v: &serde_json::Value) -> Result<Poly<F>> {
        let arr = v
            .get("g")
            .and_then(|g| g.as_array())
            .ok_or_else(|| Error::Parse("report has no \"g\" array".into()))?;
        let coeffs: Vec<&str> = arr
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| Error::Parse("coefficient is not a string".into()))
            })
            .collect::<Result<_>>()?;
        Poly::from_strings(ctx, &coeffs)
    }
}

impl<F: Field> Serialize for SeqReport<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("k", &self.k)?;
        m.serialize_entry("degree", &self.degree)?;
        m.serialize_entry("g", &self.g)?;
        m.serialize_entry("scalar", &self.g.ctx().format(&self.scalar))?;
        m.serialize_entry("checks", &self.checks)?;
        m.serialize_entry("timing_ms", &self.timing_ms)?;
        if !self.verdicts.is_empty() {
            m.serialize_entry("verdicts", &self.verdicts)?;
        }
        m.end()
    }
}

/// `f_0(x^(t^k))` for a seed built from `f_0 = x^n - A`.
pub fn companion_fk<F: Field>(s: &SeedSpec<F>, k: usize) -> Result<Poly<F>> {
    let origin = s.origin.as_ref().ok_or(Error::MissingBinomialOrigin)?;
    let exp = pow_checked(s.t as u64, k)?;
    let deg = (origin.n as u64)
        .checked_mul(exp)
        .ok_or_else(|| Error::InvalidArgument("degree overflows".into()))?;
    Ok(Poly::binomial(s.ctx().clone(), deg as usize, &origin.a))
}

fn pow_checked(t: u64, k: usize) -> Result<u64> {
    u32::try_from(k)
        .ok()
        .and_then(|k| t.checked_pow(k))
        .ok_or_else(|| Error::InvalidArgument("degree overflows".into()))
}

/// Lazily produced reports for `k = 0..=k_max`.
///
/// Verification of step `k` runs alongside the computation of step `k + 1`.
/// After an error the iterator is exhausted.
pub struct Generator<F: Field> {
    seed: SeedSpec<F>,
    level: VerifyLevel,
    exec: Exec,
    k: usize,
    k_max: usize,
    pending: Option<Result<(Poly<F>, F::Elem)>>,
    verdicts: Vec<CaseVerdict>,
}

/// Starts an iteration, refusing up front if the final degree exceeds the
/// limit for `level`.
pub fn iterate<F: Field>(
    s: &SeedSpec<F>,
    k_max: usize,
    level: VerifyLevel,
) -> Result<Generator<F>> {
    let final_degree = pow_checked(s.t as u64, k_max)?
        .checked_mul(s.degree() as u64)
        .ok_or_else(|| Error::InvalidArgument("degree overflows".into()))?;
    if let Some((limit, what)) = level.limit() {
        if final_degree > limit {
            return Err(Error::DegreeLimit {
                degree: final_degree,
                limit,
                what,
            });
        }
    }
    let scalar = match &s.origin {
        Some(o) => o.raw_g0.leading().cloned().expect("seed is nonzero"),
        None => s.ctx().one(),
    };
    Ok(Generator {
        seed: s.clone(),
        level,
        exec: Exec::default(),
        k: 0,
        k_max,
        pending: Some(Ok((s.g0.clone(), scalar))),
        verdicts: Vec::new(),
    })
}

impl<F: Field> Generator<F> {
    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// Attaches seed verdicts to the first report.
    pub fn with_verdicts(mut self, verdicts: Vec<CaseVerdict>) -> Self {
        self.verdicts = verdicts;
        self
    }

    fn checks(&self, g: &Poly<F>, k: usize) -> BTreeMap<String, bool> {
        let s = &self.seed;
        let mut out = BTreeMap::new();
        let expected = s.degree() * s.t.pow(k as u32);
        out.insert("degree_law".into(), g.degree() == Some(expected));
        out.insert("monic".into(), g.is_monic());
        if s.origin.is_some() {
            let ok = match (p_sigma(&s.sigma, g), companion_fk(s, k)) {
                (Ok(lhs), Ok(fk)) => lhs.monic() == fk.monic(),
                _ => false,
            };
            out.insert("companion_identity".into(), ok);
        }
        if self.level != VerifyLevel::None {
            let irreducible = rabin_irreducible(g);
            out.insert("irreducible".into(), irreducible);
            if self.level == VerifyLevel::Full {
                let cn = irreducible
                    && is_completely_normal_with(&QuotientRing::new_trusted(g), self.exec);
                out.insert("completely_normal".into(), cn);
            }
        }
        out
    }
}

impl<F: Field> Iterator for Generator<F> {
    type Item = Result<SeqReport<F>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.k > self.k_max {
            return None;
        }
        let (g, scalar) = match self.pending.take()? {
            Ok(v) => v,
            Err(e) => {
                self.k = self.k_max + 1;
                return Some(Err(e));
            }
        };
        let k = self.k;
        let last = k == self.k_max;
        let (checked, next) = {
            let this = &*self;
            let g = &g;
            this.exec.join(
                move || {
                    let start = Instant::now();
                    let checks = this.checks(g, k);
                    (checks, start.elapsed().as_secs_f64() * 1e3)
                },
                move || {
                    (!last).then(|| {
                        r_transform(&this.seed.sigma, this.seed.t, g).map(|raw| {
                            let lead = raw.leading().cloned().expect("transform is nonzero");
                            (raw.monic(), lead)
                        })
                    })
                },
            )
        };
        let (checks, timing_ms) = checked;
        self.pending = next;
        self.k += 1;
        Some(Ok(SeqReport {
            k,
            degree: g.degree().expect("nonzero"),
            g,
            scalar,
            checks,
            timing_ms,
            verdicts: if k == 0 {
                std::mem::take(&mut self.verdicts)
            } else {
                Vec::new()
            },
        }))
    }
}
