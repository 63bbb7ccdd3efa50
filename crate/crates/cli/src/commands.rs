use rsigma::criteria::{
    applicable_verdicts, build_seed_from_binomial, check_main_theorem_case, CaseVerdict, SeedSpec,
};
use rsigma::generator::{iterate, SeqReport, VerifyLevel};
use rsigma::sweep::{chapman_parameters, chapman_seed};
use rsigma::verify::{is_completely_normal_with, is_normal_rank, rabin_irreducible, QuotientRing};
use rsigma::{Exec, Mat2, Poly, PrimeField};
use serde_json::json;

use crate::{Example, GenArgs, Level, Output, Property, SeedArgs};

/// `Ok(passed)` or a configuration error naming the offending flag.
type CmdResult = Result<bool, String>;

fn field(q: u64) -> Result<PrimeField, String> {
    PrimeField::new(q).map_err(|e| format!("--q: {e}"))
}

pub fn build_seed(args: &SeedArgs) -> Result<SeedSpec<PrimeField>, String> {
    let k = field(args.q)?;
    let entries: [i64; 4] = args.sigma.as_slice().try_into().map_err(|_| {
        format!(
            "--sigma: expected 4 entries a,b,c,d, got {}",
            args.sigma.len()
        )
    })?;
    let sigma = Mat2::from_i64s(k, entries).map_err(|e| format!("--sigma: {e}"))?;
    if args.t < 2 {
        return Err(format!("--t: must be >= 2, got {}", args.t));
    }
    match (&args.binomial, &args.seed) {
        (Some(b), None) => {
            let &[n, a] = b.as_slice() else {
                return Err(format!(
                    "--binomial: expected \"n,A\", got {} values",
                    b.len()
                ));
            };
            if n < 1 {
                return Err(format!("--binomial: n must be >= 1, got {n}"));
            }
            build_seed_from_binomial(&sigma, args.t, n as usize, &k.elem(a))
                .map_err(|e| format!("--binomial: {e}"))
        }
        (None, Some(c)) => {
            SeedSpec::new(sigma, args.t, Poly::from_i64s(k, c)).map_err(|e| format!("--seed: {e}"))
        }
        _ => Err("exactly one of --binomial or --seed is required".into()),
    }
}

fn headline(v: &CaseVerdict) -> String {
    let status = if v.holds { "holds" } else { "does not hold" };
    let case = match v.case {
        Some(c) => format!(", case {}", c.name()),
        None => String::new(),
    };
    let from = if v.holds && v.from_step > 0 {
        format!(", guaranteed from k = {}", v.from_step)
    } else {
        String::new()
    };
    format!("{}: {status}{case}{from}", v.theorem.name())
}

fn print_verdicts(verdicts: &[CaseVerdict], output: Output) {
    for v in verdicts {
        match output {
            Output::Json => println!("{}", serde_json::to_string(v).expect("verdicts serialize")),
            Output::Text => {
                println!("{}", headline(v));
                for w in &v.witnesses {
                    println!(
                        "  {:4} {}: {}",
                        if w.ok { "ok" } else { "FAIL" },
                        w.name,
                        w.detail
                    );
                }
            }
        }
    }
}

fn describe_seed(s: &SeedSpec<PrimeField>) -> String {
    format!(
        "q = {}, σ = {:?}, t = {}, g0 = {}",
        s.ctx().modulus(),
        s.sigma,
        s.t,
        s.g0
    )
}

pub fn check(args: &SeedArgs) -> CmdResult {
    let seed = build_seed(args)?;
    if args.output == Output::Text {
        println!("{}", describe_seed(&seed));
    }
    let verdicts = applicable_verdicts(&seed);
    print_verdicts(&verdicts, args.output);
    Ok(verdicts
        .iter()
        .any(|v| v.holds && v.theorem.gives_complete_normality()))
}

fn print_report(r: &SeqReport<PrimeField>, output: Output) {
    match output {
        Output::Json => println!("{}", serde_json::to_string(r).expect("reports serialize")),
        Output::Text => {
            let checks: Vec<String> = r
                .checks
                .iter()
                .map(|(name, ok)| format!("{name} {}", if *ok { "ok" } else { "FAIL" }))
                .collect();
            println!(
                "k={} degree={} scalar={} {:.1}ms [{}]",
                r.k,
                r.degree,
                r.scalar,
                r.timing_ms,
                checks.join(", ")
            );
            println!("  g = {}", r.g);
        }
    }
}

/// Streams the reports; `Ok(false)` if a check failed or the run stopped
/// early.
fn run_family(
    seed: &SeedSpec<PrimeField>,
    k_max: usize,
    level: VerifyLevel,
    exec: Exec,
    verdicts: Vec<CaseVerdict>,
    output: Output,
    mut each: impl FnMut(&SeqReport<PrimeField>) -> bool,
) -> CmdResult {
    let gen = iterate(seed, k_max, level)
        .map_err(|e| format!("--k: {e}"))?
        .with_exec(exec)
        .with_verdicts(verdicts);
    let mut ok = true;
    for report in gen {
        match report {
            Ok(r) => {
                print_report(&r, output);
                ok &= each(&r);
            }
            Err(e) => {
                eprintln!("generation stopped: {e}");
                return Ok(false);
            }
        }
    }
    Ok(ok)
}

pub fn gen(args: &GenArgs) -> CmdResult {
    let seed = build_seed(&args.seed)?;
    let output = args.seed.output;
    let verdicts = applicable_verdicts(&seed);
    if output == Output::Text {
        println!("{}", describe_seed(&seed));
        for v in &verdicts {
            println!("{}", headline(v));
        }
    }
    let level = match args.verify {
        Level::None => VerifyLevel::None,
        Level::Fast => VerifyLevel::Fast,
        Level::Full => VerifyLevel::Full,
    };
    let exec = if args.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    run_family(&seed, args.k_max, level, exec, verdicts, output, |r| {
        r.all_passed()
    })
}

fn summary(name: &str, pass: bool, detail: String, output: Output) {
    match output {
        Output::Json => println!(
            "{}",
            json!({ "example": name, "pass": pass, "detail": detail })
        ),
        Output::Text => println!("{name}: {} ({detail})", if pass { "PASS" } else { "FAIL" }),
    }
}

fn binomial_args(q: u64, sigma: [i64; 4], t: usize, n: i64, a: i64, output: Output) -> SeedArgs {
    SeedArgs {
        q,
        sigma: sigma.to_vec(),
        t,
        binomial: Some(vec![n, a]),
        seed: None,
        output,
    }
}

/// Runs a binomial-origin family and compares `g0` before normalization
/// with the expected coefficients.
fn binomial_example(name: &str, args: &SeedArgs, k_max: usize, raw: &[i64]) -> CmdResult {
    let output = args.output;
    let seed = build_seed(args)?;
    let k = *seed.ctx();
    let raw_g0 = &seed.origin.as_ref().expect("binomial seed").raw_g0;
    let raw_ok = *raw_g0 == Poly::from_i64s(k, raw);
    let verdicts = applicable_verdicts(&seed);
    let holds = verdicts
        .iter()
        .any(|v| v.holds && v.theorem.gives_complete_normality());
    let mut degrees = Vec::new();
    let steps_ok = run_family(
        &seed,
        k_max,
        VerifyLevel::Full,
        Exec::Parallel,
        verdicts,
        output,
        |r| {
            degrees.push(r.degree.to_string());
            r.all_passed()
        },
    )?;
    let pass = raw_ok && holds && steps_ok;
    summary(
        name,
        pass,
        format!(
            "g0 before normalization {raw_g0}, hypotheses hold: {holds}, degrees {}",
            degrees.join(",")
        ),
        output,
    );
    Ok(pass)
}

fn chapman_example(output: Output) -> CmdResult {
    let k = field(13)?;
    let a = *chapman_parameters(k)
        .first()
        .expect("F_13 has irreducible x^2+ax+1");
    let seed = chapman_seed(k, a).map_err(|e| e.to_string())?;
    let verdict = check_main_theorem_case(&seed).map_err(|e| e.to_string())?;
    let holds = verdict.holds;
    let g1 = Poly::new(k, vec![1, a, 1]);
    let mut degrees = Vec::new();
    let steps_ok = run_family(
        &seed,
        4,
        VerifyLevel::Full,
        Exec::Parallel,
        vec![verdict],
        output,
        |r| {
            degrees.push(r.degree.to_string());
            // the linear seed only serves to produce g1
            r.k == 0 || (r.all_passed() && (r.k != 1 || r.g == g1))
        },
    )?;
    let pass = holds && steps_ok;
    summary(
        "chapman",
        pass,
        format!(
            "q = 13, a = {a}, g1 = {g1}, hypotheses hold: {holds}, degrees {}",
            degrees.join(",")
        ),
        output,
    );
    Ok(pass)
}

pub fn examples(which: Example, output: Output) -> CmdResult {
    match which {
        Example::F7 => binomial_example(
            "f7",
            &binomial_args(7, [1, 2, 2, 1], 3, 2, 3, output),
            3,
            &[4, 4, 5],
        ),
        Example::F31 => binomial_example(
            "f31",
            &binomial_args(31, [2, 2, 2, -2], 5, 3, 10, output),
            2,
            &[21, 2, 1, 11],
        ),
        Example::Chapman => chapman_example(output),
    }
}

pub fn verify(property: Property, q: u64, coeffs: &[i64], output: Output) -> CmdResult {
    let k = field(q)?;
    let poly = Poly::from_i64s(k, coeffs);
    if poly.degree().is_none_or(|d| d == 0) {
        return Err("--poly: degree must be at least 1".into());
    }
    let (name, result) = match property {
        Property::Irreducible => ("irreducible", rabin_irreducible(&poly)),
        Property::Normal | Property::Cnormal => {
            let ring = QuotientRing::new(&poly.monic()).map_err(|e| format!("--poly: {e}"))?;
            match property {
                Property::Normal => ("normal", is_normal_rank(&ring)),
                _ => (
                    "completely_normal",
                    is_completely_normal_with(&ring, Exec::Parallel),
                ),
            }
        }
    };
    match output {
        Output::Json => println!(
            "{}",
            json!({ "q": q, "poly": poly, "property": name, "result": result })
        ),
        Output::Text => println!("{poly} over F_{q}: {name} = {result}"),
    }
    Ok(result)
}
