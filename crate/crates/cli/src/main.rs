//! `lucaspoly`: command-line front end for Lucas sequences over K[T].
//!
//! Exit status is 0 on success, 1 when a mathematical precondition fails
//! (not regular, degenerate, inexact division, ...) and 2 for usage and
//! parse errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lucaspoly::cyclotomic::q_term;
use lucaspoly::primdiv::{self, DEFAULT_RANK_BOUND};
use lucaspoly::verify::{self, VerifyConfig};
use lucaspoly::{
    factor, valuation, Error, FieldSpec, Irreducible, LucasParams, LucasSequence, Poly, RandomSeed,
    RankResult,
};

#[derive(Parser)]
#[command(name = "lucaspoly", version, about = "Lucas sequences over Q[T] and F_p[T]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print U_n, or U_0..U_upto.
    Term(Opts),
    /// Print the cyclotomic factor term Q_n.
    Qn(Opts),
    /// Report which of U_1, U_2, U_3, U_4, U_6 lack a primitive divisor.
    Classify(Opts),
    /// Decide by brute force whether U_n has a primitive divisor.
    Oracle(Opts),
    /// Rank of appearance of an irreducible --prime.
    Rank(Opts),
    /// Valuation of --poly, or of U_n, at an irreducible --prime.
    Valuation(Opts),
    /// Factor --poly over F_p.
    Factor(Opts),
    /// Run the seeded invariant suite of every module.
    Verify(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// Characteristic of the coefficient field: 0 for Q, or a prime p.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    #[arg(long = "P", allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long = "Q", allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// Irreducible polynomial; certified over F_p, taken on trust over Q.
    #[arg(long, allow_hyphen_values = true)]
    prime: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    upto: Option<usize>,
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long, env = "LUCASPOLY_SEED", default_value_t = 0)]
    seed: u64,
    /// Trials per check and field for `verify`.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<(String, Value), Failure>;

fn missing(flag: &str) -> Failure {
    Failure::Usage(format!("missing required flag --{flag}"))
}

impl Opts {
    fn field(&self) -> Result<FieldSpec, Failure> {
        Ok(FieldSpec::with_characteristic(self.characteristic)?)
    }

    fn poly(&self, flag: &str, text: &Option<String>) -> Result<Poly, Failure> {
        let text = text.as_deref().ok_or_else(|| missing(flag))?;
        Poly::parse(text, self.field()?).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
    }

    fn sequence(&self) -> Result<LucasSequence, Failure> {
        let p = self.poly("P", &self.p)?;
        let q = self.poly("Q", &self.q)?;
        Ok(LucasSequence::new(LucasParams::new(p, q)?))
    }

    fn prime(&self) -> Result<Irreducible, Failure> {
        Ok(Irreducible::from_poly(&self.poly("prime", &self.prime)?)?)
    }

    fn n(&self) -> Result<usize, Failure> {
        self.n.ok_or_else(|| missing("n"))
    }

    /// `--n` alone, or `lo..=upto`.
    fn indices(&self, lo: usize) -> Result<Vec<usize>, Failure> {
        match (self.n, self.upto) {
            (Some(n), None) => Ok(vec![n]),
            (None, Some(u)) => Ok((lo..=u).collect()),
            (Some(_), Some(_)) => Err(Failure::Usage("give either --n or --upto, not both".into())),
            (None, None) => Err(missing("n")),
        }
    }
}

fn term(o: &Opts) -> Outcome {
    let s = o.sequence()?;
    let rows: Vec<(usize, Poly)> = o.indices(0)?.into_iter().map(|n| (n, s.term(n))).collect();
    let text = match rows.as_slice() {
        [(_, u)] if o.upto.is_none() => u.to_string(),
        _ => lines(rows.iter().map(|(n, u)| format!("U_{n} = {u}"))),
    };
    let json = json!(rows
        .iter()
        .map(|(n, u)| json!({ "n": n, "u": u.to_string() }))
        .collect::<Vec<_>>());
    Ok((text, if o.upto.is_none() { json[0].clone() } else { json }))
}

fn qn(o: &Opts) -> Outcome {
    let s = o.sequence()?;
    let n = o.n()?;
    let value = q_term(&s, n)?;
    Ok((value.to_string(), json!({ "n": n, "q": value.to_string() })))
}

fn classify(o: &Opts) -> Outcome {
    let report = primdiv::classify(&o.sequence()?)?;
    Ok((report.to_string(), report.to_json()))
}

fn oracle(o: &Opts) -> Outcome {
    let s = o.sequence()?;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for n in o.indices(1)? {
        let has = primdiv::has_primitive_divisor(&s, n)?;
        let witness = if has && !s.field().is_rational() {
            primdiv::find_primitive_divisor(&s, n, RandomSeed(o.seed))?.map(|d| d.to_string())
        } else {
            None
        };
        text.push(match (&witness, has) {
            (Some(w), _) => format!("n = {n}: primitive divisor {w}"),
            (None, true) => format!("n = {n}: has a primitive divisor"),
            (None, false) => format!("n = {n}: no primitive divisor"),
        });
        rows.push(json!({ "n": n, "primitive": has, "witness": witness }));
    }
    let json = if o.upto.is_none() { rows[0].clone() } else { json!(rows) };
    Ok((lines(text), json))
}

fn rank(o: &Opts) -> Outcome {
    let s = o.sequence()?;
    let prime = o.prime()?;
    let bound = o.bound.unwrap_or(DEFAULT_RANK_BOUND);
    let r = primdiv::rank_of_appearance(&s, &prime, bound)?;
    let json = match r {
        RankResult::Finite(v) => json!({ "rank": v }),
        RankResult::Infinite(_) => json!({ "rank": "inf", "reason": "divides Q" }),
        RankResult::UnknownBeyond(b) => json!({ "rank": null, "searched_up_to": b }),
    };
    Ok((r.to_string(), json))
}

fn valuation_cmd(o: &Opts) -> Outcome {
    let prime = o.prime()?;
    let f = match (&o.poly, o.n) {
        (Some(_), None) => o.poly("poly", &o.poly)?,
        (None, Some(n)) => o.sequence()?.term(n),
        (Some(_), Some(_)) => return Err(Failure::Usage("give either --poly or --n, not both".into())),
        (None, None) => return Err(missing("poly")),
    };
    let v = valuation(&f, &prime)?;
    Ok((v.to_string(), json!({ "valuation": v.to_string() })))
}

fn factor_cmd(o: &Opts) -> Outcome {
    let f = o.poly("poly", &o.poly)?;
    let fac = factor(&f, RandomSeed(o.seed))?;
    Ok((fac.to_string(), fac.to_json()))
}

fn verify_cmd(o: &Opts) -> Result<(String, Value, bool), Failure> {
    let report = verify::run(&VerifyConfig::new(o.seed, o.trials));
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "module": r.module,
                "check": r.check,
                "field": r.field.to_string(),
                "trials": r.trials,
                "failures": r.failures,
                "first_failure": r.first_failure,
            })
        })
        .collect();
    let json = json!({ "seed": o.seed.to_string(), "passed": report.all_passed(), "rows": rows });
    Ok((report.to_string(), json, report.all_passed()))
}

fn lines(it: impl IntoIterator<Item = String>) -> String {
    it.into_iter().collect::<Vec<_>>().join("\n")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (opts, result) = match &cli.command {
        Command::Term(o) => (o, term(o).map(|(t, j)| (t, j, true))),
        Command::Qn(o) => (o, qn(o).map(|(t, j)| (t, j, true))),
        Command::Classify(o) => (o, classify(o).map(|(t, j)| (t, j, true))),
        Command::Oracle(o) => (o, oracle(o).map(|(t, j)| (t, j, true))),
        Command::Rank(o) => (o, rank(o).map(|(t, j)| (t, j, true))),
        Command::Valuation(o) => (o, valuation_cmd(o).map(|(t, j)| (t, j, true))),
        Command::Factor(o) => (o, factor_cmd(o).map(|(t, j)| (t, j, true))),
        Command::Verify(o) => (o, verify_cmd(o)),
    };
    match result {
        Ok((text, json, ok)) => {
            if opts.json {
                println!("{json}");
            } else {
                println!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
