//! Command-line front end. Every subcommand prints a machine-readable
//! record (JSON or CSV, selectable with `--format`); rationals are always
//! serialized exactly, never as decimals, unless a field is defined as a
//! ratio. Exit codes: 0 success, 2 precondition violation, 1 internal
//! contract failure.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cf::{cf_expand, cf_partial_quotient_sum};
use crate::constants::moment_constant;
use crate::dedekind::{dedekind_fast, dedekind_naive, dedekind_table};
use crate::diophantine::{approx_error, build_dissection, dirichlet_approx, lemma_main_term, ApproxTriple};
use crate::error::{invalid, Error, Result};
use crate::moments::{fm, fm_oracle, growth_check, moment_report, vardi_histogram};
use crate::rational::{gcd, Rational};
use crate::walum::walum_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "dedekind", version, about = "Exact Dedekind sums, moments, and identity checks")]
struct Cli {
    /// Output encoding; each subcommand has a natural default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads; exact outputs are identical for every choice.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate s(h, k).
    Sum {
        h: i64,
        k: i64,
        /// O(k) defining sum only.
        #[arg(long, conflicts_with_all = ["fast", "both"])]
        naive: bool,
        /// O(log k) continued-fraction formula only (default).
        #[arg(long, conflicts_with = "both")]
        fast: bool,
        /// Run both algorithms; nonzero exit if they disagree.
        #[arg(long)]
        both: bool,
    },
    /// All s(h, k) for reduced h, as CSV `h,s`.
    Table { k: i64 },
    /// Continued-fraction expansion of a/q.
    Cf { a: i64, q: i64 },
    /// Dirichlet approximation of h/k with denominator cap q1, plus the
    /// main term k/(12 q eps) and the exact error.
    Approx { h: i64, k: i64, q1: i64 },
    /// Farey interval family for q <= q1, as CSV `a,q,lo,hi`.
    Dissect {
        q1: i64,
        /// Instead of the table, report coverage/multiplicity/disjointness
        /// diagnostics for denominator k.
        #[arg(long)]
        check: Option<i64>,
    },
    /// Exact 2m-th moment of s(., k) with its main term and ratio.
    Moment { k: i64, m: u32 },
    /// The exact moment constant 2 zeta(2m)^2 / zeta(4m).
    Constant { m: u32 },
    /// The multiplicative coefficient f_m(k), exactly.
    Fm {
        k: i64,
        m: u32,
        /// Also run the truncated triple-sum evaluation with bounds
        /// `--oracle QMAX HMAX` and report the difference.
        #[arg(long, num_args = 2, value_names = ["QMAX", "HMAX"])]
        oracle: Option<Vec<i64>>,
    },
    /// Walum identity check at a prime k.
    Walum { k: i64 },
    /// Histogram of s(h,k)/log k over all k <= kmax, CSV `bin_lo,bin_hi,count`.
    Vardi { kmax: i64, bins: i64, bound: Rational },
    /// Partial-quotient and |s| growth sums over a geometric ladder.
    Growth { qmax: i64 },
    /// Median-of-5 wall times, naive vs fast, across a k ladder.
    Bench { kmax: i64 },
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version on stdout with success status
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };

    let body = || -> Result<()> { dispatch(&cli) };
    let outcome = match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build();
            match pool {
                Ok(pool) => pool.install(body),
                Err(e) => Err(invalid(format!("cannot build thread pool: {e}"))),
            }
        }
        None => body(),
    };

    match outcome {
        Ok(()) => 0,
        Err(Error::InvalidInput(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Error::Contract(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Sum { h, k, naive, fast, both } => cmd_sum(*h, *k, *naive, *fast, *both, fmt),
        Cmd::Table { k } => cmd_table(*k, fmt),
        Cmd::Cf { a, q } => cmd_cf(*a, *q, fmt),
        Cmd::Approx { h, k, q1 } => cmd_approx(*h, *k, *q1, fmt),
        Cmd::Dissect { q1, check } => cmd_dissect(*q1, *check, fmt),
        Cmd::Moment { k, m } => cmd_moment(*k, *m, fmt),
        Cmd::Constant { m } => cmd_constant(*m, fmt),
        Cmd::Fm { k, m, oracle } => cmd_fm(*k, *m, oracle.as_deref(), fmt),
        Cmd::Walum { k } => cmd_walum(*k, fmt),
        Cmd::Vardi { kmax, bins, bound } => cmd_vardi(*kmax, *bins, bound, fmt),
        Cmd::Growth { qmax } => cmd_growth(*qmax, fmt),
        Cmd::Bench { kmax } => cmd_bench(*kmax, fmt),
    }
}

fn cmd_sum(h: i64, k: i64, naive: bool, fast: bool, both: bool, fmt: Option<Format>) -> Result<()> {
    let fmt = fmt.unwrap_or(Format::Json);
    let mut fields: Vec<(&str, String)> =
        vec![("h", h.to_string()), ("k", k.to_string())];
    let mut disagree = false;
    if both {
        let f = dedekind_fast(h, k)?;
        let n = dedekind_naive(h, k)?;
        disagree = f != n;
        fields.push(("fast", format!("\"{f}\"")));
        fields.push(("naive", format!("\"{n}\"")));
        fields.push(("equal", (!disagree).to_string()));
    } else if naive {
        fields.push(("naive", format!("\"{}\"", dedekind_naive(h, k)?)));
    } else {
        let _ = fast; // the default algorithm
        fields.push(("fast", format!("\"{}\"", dedekind_fast(h, k)?)));
    }
    emit_record(fmt, &fields);
    if disagree {
        return Err(Error::Contract(format!(
            "sum: fast and naive algorithms disagree at h={h} k={k}"
        )));
    }
    Ok(())
}

fn cmd_table(k: i64, fmt: Option<Format>) -> Result<()> {
    let rows = dedekind_table(k)?;
    match fmt.unwrap_or(Format::Csv) {
        Format::Csv => {
            println!("h,s");
            for (h, s) in rows {
                println!("{h},{s}");
            }
        }
        Format::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|(h, s)| format!("{{\"h\":{h},\"s\":\"{s}\"}}"))
                .collect();
            println!("[{}]", body.join(","));
        }
    }
    Ok(())
}

fn cmd_cf(a: i64, q: i64, fmt: Option<Format>) -> Result<()> {
    let cf = cf_expand(a, q)?;
    let n = cf_partial_quotient_sum(&cf);
    match fmt.unwrap_or(Format::Json) {
        Format::Json => emit_record(
            Format::Json,
            &[
                ("a", a.to_string()),
                ("q", q.to_string()),
                ("cf", format!("\"{cf}\"")),
                ("partial_quotient_sum", n.to_string()),
            ],
        ),
        Format::Csv => {
            // bracket-free token with ';' separators keeps CSV unquoted
            let token: Vec<String> = cf.quotients().iter().map(|d| d.to_string()).collect();
            println!("a,q,quotients,partial_quotient_sum");
            println!("{a},{q},{},{n}", token.join(";"));
        }
    }
    Ok(())
}

fn cmd_approx(h: i64, k: i64, q1: i64, fmt: Option<Format>) -> Result<()> {
    if k <= 0 || h < 0 || h > k {
        return Err(invalid(format!("approx: need 0 <= h <= k with k > 0, got h={h} k={k}")));
    }
    if gcd(h, k) != 1 {
        return Err(invalid(format!("approx: gcd({h}, {k}) != 1")));
    }
    if q1 < 2 {
        return Err(invalid(format!("approx: need q1 >= 2, got {q1}")));
    }
    let alpha = Rational::new(h, k);
    let (a, q) = dirichlet_approx(&alpha, &Rational::from_integer(q1))?;
    let triple = ApproxTriple::new(h, k, a, q)?;
    let main = lemma_main_term(k, q, triple.eps);
    let err = approx_error(h, k, a, q)?;
    emit_record(
        fmt.unwrap_or(Format::Json),
        &[
            ("h", h.to_string()),
            ("k", k.to_string()),
            ("q1", q1.to_string()),
            ("a", triple.a.to_string()),
            ("q", triple.q.to_string()),
            ("eps", triple.eps.to_string()),
            ("main_term", format!("\"{main}\"")),
            ("error", format!("\"{err}\"")),
        ],
    );
    Ok(())
}

fn cmd_dissect(q1: i64, check: Option<i64>, fmt: Option<Format>) -> Result<()> {
    let d = build_dissection(q1)?;
    match check {
        None => match fmt.unwrap_or(Format::Csv) {
            Format::Csv => {
                println!("a,q,lo,hi");
                for iv in d.intervals() {
                    println!("{},{},{},{}", iv.a, iv.q, iv.lo, iv.hi);
                }
            }
            Format::Json => {
                let body: Vec<String> = d
                    .intervals()
                    .iter()
                    .map(|iv| {
                        format!(
                            "{{\"a\":{},\"q\":{},\"lo\":\"{}\",\"hi\":\"{}\"}}",
                            iv.a, iv.q, iv.lo, iv.hi
                        )
                    })
                    .collect();
                println!("[{}]", body.join(","));
            }
        },
        Some(k) => {
            if k < 1 {
                return Err(invalid("dissect --check: k must be positive"));
            }
            let (min_mult, max_mult) = crate::diophantine::coverage_stats(&d, k)?;
            let disjoint = d.subfamily_disjoint(q1 / 2);
            let centers_exclusive = d
                .intervals()
                .iter()
                .all(|iv| matches!(d.cover(iv.a, iv.q), Ok(c) if c == vec![(iv.a, iv.q)]));
            emit_record(
                fmt.unwrap_or(Format::Json),
                &[
                    ("q1", q1.to_string()),
                    ("k", k.to_string()),
                    ("intervals", d.len().to_string()),
                    ("covered", (min_mult >= 1).to_string()),
                    ("min_multiplicity", min_mult.to_string()),
                    ("max_multiplicity", max_mult.to_string()),
                    ("disjoint_up_to_half", disjoint.to_string()),
                    ("centers_exclusive", centers_exclusive.to_string()),
                ],
            );
        }
    }
    Ok(())
}

fn cmd_moment(k: i64, m: u32, fmt: Option<Format>) -> Result<()> {
    let rep = moment_report(k, m)?;
    emit_record(
        fmt.unwrap_or(Format::Json),
        &[
            ("k", rep.k.to_string()),
            ("m", rep.m.to_string()),
            ("moment", format!("\"{}\"", rep.moment)),
            ("main_term", format!("\"{}\"", rep.main_term)),
            ("ratio", rep.ratio.clone()),
        ],
    );
    Ok(())
}

fn cmd_constant(m: u32, fmt: Option<Format>) -> Result<()> {
    if m < 1 {
        return Err(invalid("constant: need m >= 1"));
    }
    let c = moment_constant(m);
    match fmt {
        None => println!("{c}"),
        Some(f) => emit_record(f, &[("m", m.to_string()), ("value", format!("\"{c}\""))]),
    }
    Ok(())
}

fn cmd_fm(k: i64, m: u32, oracle: Option<&[i64]>, fmt: Option<Format>) -> Result<()> {
    let value = fm(k, m)?;
    match oracle {
        None => match fmt {
            None => println!("{value}"),
            Some(f) => emit_record(
                f,
                &[
                    ("k", k.to_string()),
                    ("m", m.to_string()),
                    ("value", format!("\"{value}\"")),
                ],
            ),
        },
        Some(bounds) => {
            let (qmax, hmax) = (bounds[0], bounds[1]);
            let o = fm_oracle(k, m, qmax, hmax)?;
            let diff = (value.to_f64() - o.value.to_f64()).abs();
            emit_record(
                fmt.unwrap_or(Format::Json),
                &[
                    ("k", k.to_string()),
                    ("m", m.to_string()),
                    ("value", format!("\"{value}\"")),
                    ("oracle", format!("{:.15e}", o.value.to_f64())),
                    ("qmax", o.qmax.to_string()),
                    ("hmax", o.hmax.to_string()),
                    ("tail_bound", format!("{:.3e}", o.tail_bound)),
                    ("abs_diff", format!("{diff:.3e}")),
                    ("within_tail_bound", (diff <= o.tail_bound).to_string()),
                ],
            );
            if diff > o.tail_bound {
                return Err(Error::Contract(format!(
                    "fm: closed form and oracle differ by {diff:.3e} > tail bound {:.3e}",
                    o.tail_bound
                )));
            }
        }
    }
    Ok(())
}

fn cmd_walum(k: i64, fmt: Option<Format>) -> Result<()> {
    let rep = walum_check(k)?;
    emit_record(
        fmt.unwrap_or(Format::Json),
        &[
            ("k", rep.k.to_string()),
            ("rhs", format!("\"{} (×π⁴)\"", rep.rhs_over_pi4)),
            ("lhs_over_pi4", format!("{:e}", rep.lhs_over_pi4)),
            ("rel_diff", format!("{:e}", rep.rel_diff)),
        ],
    );
    if rep.rel_diff.is_nan() || rep.rel_diff > 1e-8 {
        return Err(Error::Contract(format!(
            "walum: identity off by {:e} at k={k}",
            rep.rel_diff
        )));
    }
    Ok(())
}

fn cmd_vardi(kmax: i64, bins: i64, bound: &Rational, fmt: Option<Format>) -> Result<()> {
    let h = vardi_histogram(kmax, bins, bound)?;
    let bound_str = |b: Option<Rational>, neg_inf: bool| match b {
        Some(r) => r.to_string(),
        None => (if neg_inf { "-inf" } else { "inf" }).to_string(),
    };
    match fmt.unwrap_or(Format::Csv) {
        Format::Csv => {
            println!("bin_lo,bin_hi,count");
            for (i, &c) in h.cells.iter().enumerate() {
                let (lo, hi) = h.cell_bounds(i);
                println!("{},{},{c}", bound_str(lo, true), bound_str(hi, false));
            }
        }
        Format::Json => {
            let body: Vec<String> = h
                .cells
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let (lo, hi) = h.cell_bounds(i);
                    format!(
                        "{{\"bin_lo\":\"{}\",\"bin_hi\":\"{}\",\"count\":{c}}}",
                        bound_str(lo, true),
                        bound_str(hi, false)
                    )
                })
                .collect();
            println!("[{}]", body.join(","));
        }
    }
    Ok(())
}

fn cmd_growth(qmax: i64, fmt: Option<Format>) -> Result<()> {
    let rows = growth_check(qmax)?;
    match fmt.unwrap_or(Format::Csv) {
        Format::Csv => {
            println!("q,n_sum,s_abs_sum,q_log2_q");
            for r in rows {
                println!(
                    "{},{},{},{:.6}",
                    r.q, r.partial_quotient_sum, r.abs_dedekind_sum, r.comparator
                );
            }
        }
        Format::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{{\"q\":{},\"n_sum\":{},\"s_abs_sum\":\"{}\",\"q_log2_q\":{:.6}}}",
                        r.q, r.partial_quotient_sum, r.abs_dedekind_sum, r.comparator
                    )
                })
                .collect();
            println!("[{}]", body.join(","));
        }
    }
    Ok(())
}

fn median5<F: FnMut() -> f64>(mut f: F) -> f64 {
    let mut xs: Vec<f64> = (0..5).map(|_| f()).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[2]
}

fn cmd_bench(kmax: i64, fmt: Option<Format>) -> Result<()> {
    if kmax < 16 {
        return Err(invalid("bench: need kmax >= 16"));
    }
    let mut ladder = Vec::new();
    let mut k = 16i64;
    while k <= kmax {
        ladder.push(k);
        k *= 4;
    }
    let rows: Vec<(i64, i64, f64, f64)> = ladder
        .iter()
        .map(|&k| {
            // h near the golden-ratio fraction of k maximizes the
            // continued-fraction length
            let target = (k as f64 * 0.618) as i64;
            let h = (0..k)
                .map(|d| if d % 2 == 0 { target + d / 2 } else { target - d / 2 - 1 })
                .find(|&h| h > 0 && h < k && gcd(h, k) == 1)
                .unwrap_or(1);
            let naive_ms = median5(|| {
                let t = Instant::now();
                let _ = dedekind_naive(h, k).unwrap();
                t.elapsed().as_secs_f64() * 1e3
            });
            let reps = 256;
            let fast_ms = median5(|| {
                let t = Instant::now();
                for _ in 0..reps {
                    let _ = dedekind_fast(h, k).unwrap();
                }
                t.elapsed().as_secs_f64() * 1e3 / reps as f64
            });
            (k, h, naive_ms, fast_ms)
        })
        .collect();
    match fmt.unwrap_or(Format::Csv) {
        Format::Csv => {
            println!("k,h,naive_ms,fast_ms,speedup");
            for (k, h, n, f) in rows {
                println!("{k},{h},{n:.6},{f:.6},{:.1}", n / f);
            }
        }
        Format::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|(k, h, n, f)| {
                    format!(
                        "{{\"k\":{k},\"h\":{h},\"naive_ms\":{n:.6},\"fast_ms\":{f:.6},\"speedup\":{:.1}}}",
                        n / f
                    )
                })
                .collect();
            println!("[{}]", body.join(","));
        }
    }
    Ok(())
}

/// Render one flat record. JSON values arrive pre-encoded (quoted strings
/// keep their quotes); CSV prints them unquoted.
fn emit_record(fmt: Format, fields: &[(&str, String)]) {
    match fmt {
        Format::Json => {
            let body: Vec<String> = fields
                .iter()
                .map(|(k, v)| format!("\"{k}\":{v}"))
                .collect();
            println!("{{{}}}", body.join(","));
        }
        Format::Csv => {
            let headers: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let values: Vec<String> = fields
                .iter()
                .map(|(_, v)| v.trim_matches('"').to_string())
                .collect();
            println!("{}", headers.join(","));
            println!("{}", values.join(","));
        }
    }
}
