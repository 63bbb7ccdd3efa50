//! Exhaustive cross-checks of the fast criteria against the brute-force
//! oracles over small prime fields. Every sweep is a flat list of
//! independent jobs run through [`Exec`].

use crate::criteria::{binomial_irreducible, main_lemma_normal, SeedSpec};
use crate::error::Result;
use crate::exec::Exec;
use crate::generator::{iterate, VerifyLevel};
use crate::gf::{Field, PrimeField};
use crate::moebius::{p_sigma, Mat2};
use crate::poly::Poly;
use crate::verify::{coset_normality, is_normal_rank, rabin_irreducible, QuotientRing};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    /// Number of instances compared.
    pub checked: usize,
    /// One line per instance where the methods disagreed or errored.
    pub disagreements: Vec<String>,
}

impl SweepSummary {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }

    fn collect(results: Vec<Option<String>>) -> Self {
        Self {
            checked: results.len(),
            disagreements: results.into_iter().flatten().collect(),
        }
    }
}

/// All of `GL_2(F_p)`.
pub fn gl2(k: PrimeField) -> Vec<Mat2<PrimeField>> {
    let p = k.modulus();
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if let Ok(m) = Mat2::new(k, a, b, c, d) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Order-based criterion vs Rabin's test on `x^t - A` for every nonzero
/// `A` and `1 <= t <= t_max`.
pub fn binomial_sweep(qs: &[u64], t_max: u64, exec: Exec) -> Result<SweepSummary> {
    let mut jobs = Vec::new();
    for &q in qs {
        let k = PrimeField::new(q)?;
        for t in 1..=t_max {
            jobs.extend(k.units().map(|a| (k, t, a)));
        }
    }
    let results = exec.map(&jobs, |&(k, t, a)| {
        let fast = binomial_irreducible(&k, t, &a);
        let oracle = rabin_irreducible(&Poly::binomial(k, t as usize, &a));
        match fast {
            Ok(fast) if fast == oracle => None,
            other => Some(format!(
                "q={} t={t} A={a}: criterion {other:?}, rabin {oracle}",
                k.modulus()
            )),
        }
    });
    Ok(SweepSummary::collect(results))
}

/// The entry-based normality test vs the rank oracle vs the cyclotomic
/// coset decomposition, for every irreducible `x^n - A` and every
/// `σ ∈ GL_2(F_q)`.
pub fn main_lemma_sweep(qs: &[u64], ns: &[usize], exec: Exec) -> Result<SweepSummary> {
    let mut jobs = Vec::new();
    for &q in qs {
        let k = PrimeField::new(q)?;
        let group = gl2(k);
        for &n in ns {
            for a in k.units() {
                if rabin_irreducible(&Poly::binomial(k, n, &a)) {
                    jobs.extend(group.iter().map(|s| (s.clone(), n, a)));
                }
            }
        }
    }
    let results = exec.map(&jobs, |(sigma, n, a)| {
        let k = *sigma.ctx();
        let lemma = main_lemma_normal(sigma, *n, a).map(|v| v.holds);
        let rank = p_sigma(sigma, &Poly::binomial(k, *n, a))
            .map(|g| is_normal_rank(&QuotientRing::new_trusted(&g.monic())));
        let coset = coset_normality(sigma, *n, a).map(|d| d.normal);
        match (&lemma, &rank, &coset) {
            (Ok(x), Ok(y), Ok(z)) if x == y && y == z => None,
            _ => Some(format!(
                "q={} σ={sigma:?} n={n} A={a}: lemma {lemma:?}, rank {rank:?}, cosets {coset:?}",
                k.modulus()
            )),
        }
    });
    Ok(SweepSummary::collect(results))
}

/// Values of `a` for which `x^2 + a x + 1` is irreducible, ascending.
pub fn chapman_parameters(k: PrimeField) -> Vec<u64> {
    k.elements()
        .filter(|&a| rabin_irreducible(&Poly::new(k, vec![1, a, 1])))
        .collect()
}

/// Seed `x - A` with `A = -a/2` under `σ = (1 1; 1 -1)`, `t = 2`; its first
/// iterate is `x^2 + a x + 1`.
pub fn chapman_seed(k: PrimeField, a: u64) -> Result<SeedSpec<PrimeField>> {
    let big_a = k.neg(&k.div(&a, &2)?);
    let sigma = Mat2::from_i64s(k, [1, 1, 1, -1])?;
    SeedSpec::new(sigma, 2, Poly::binomial(k, 1, &big_a))
}

/// Complete normality of `g_1 .. g_steps` for every valid Chapman
/// parameter over each field, plus the identity `g_1 = x^2 + a x + 1`.
pub fn chapman_sweep(qs: &[u64], steps: usize, exec: Exec) -> Result<SweepSummary> {
    let mut jobs = Vec::new();
    for &q in qs {
        let k = PrimeField::new(q)?;
        jobs.extend(chapman_parameters(k).into_iter().map(|a| (k, a)));
    }
    let results = exec.map(&jobs, |&(k, a)| {
        let q = k.modulus();
        let seed = match chapman_seed(k, a) {
            Ok(s) => s,
            Err(e) => return Some(format!("q={q} a={a}: {e}")),
        };
        let gen = match iterate(&seed, steps, VerifyLevel::Full) {
            Ok(g) => g.with_exec(Exec::Sequential),
            Err(e) => return Some(format!("q={q} a={a}: {e}")),
        };
        for report in gen {
            let r = match report {
                Ok(r) => r,
                Err(e) => return Some(format!("q={q} a={a}: {e}")),
            };
            if r.k == 1 && r.g != Poly::new(k, vec![1, a, 1]) {
                return Some(format!("q={q} a={a}: g1 = {}", r.g));
            }
            if r.k >= 1 && !r.all_passed() {
                return Some(format!("q={q} a={a} k={}: {:?}", r.k, r.checks));
            }
        }
        None
    });
    Ok(SweepSummary::collect(results))
}
