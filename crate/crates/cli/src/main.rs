//! `hurwitz` — approximate quaternions by quotients of Hurwitz primes, count
//! and enumerate four-square representations, and run cap equidistribution
//! experiments. Machine-readable output: JSON for `approx`/`enum`, CSV for
//! `equi`.
//!
//! Exit codes: 0 success, 1 malformed arguments or invalid request,
//! 2 search budget exhausted (best-so-far JSON is still printed).

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use hurwitz_core::approx::{approximate, ApproxRequest, QuotientSide, DEFAULT_SEARCH_BUDGET};
use hurwitz_core::cap::{equidistribution_report_with_budget, Cap};
use hurwitz_core::counting::{
    self, enumerate_four_squares_with_budget, enumerate_hurwitz_with_budget, hurwitz_count,
    is_hurwitz_prime, r4, DEFAULT_ENUMERATION_BUDGET,
};
use hurwitz_core::quaternion::{HurwitzInt, Quaternion, Subring};
use hurwitz_core::Error;

#[derive(Parser)]
#[command(
    name = "hurwitz",
    version,
    about = "Hurwitz quaternion arithmetic and prime-quotient approximation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Clone, Copy, ValueEnum)]
enum SubringArg {
    #[value(name = "H1", alias = "h1")]
    H1,
    #[value(name = "H2", alias = "h2")]
    H2,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Squares,
    Hurwitz,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Find Hurwitz primes p, q with |h - p/q| < eps
    Approx {
        /// Target coefficients: x1 x2 x3 x4
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["X1", "X2", "X3", "X4"])]
        h: Vec<f64>,
        /// Tolerance (must be positive)
        #[arg(long)]
        eps: f64,
        /// Quotient convention: p·q⁻¹ (right) or q⁻¹·p (left)
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        /// Where the primes must live: integer (H1) or half-odd (H2) coordinates
        #[arg(long, value_enum, default_value = "H1")]
        subring: SubringArg,
        /// Maximum denominator candidates before giving up
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Print a representation count
    Count {
        #[arg(long)]
        n: u64,
        /// squares: integer 4-vectors of squared length n; hurwitz: Hurwitz quaternions of norm n
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputArg,
    },
    /// Stream representations as JSON lines (doubled coordinates for hurwitz)
    Enum {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Print at most this many entries
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Cap equidistribution experiment over odd n in a range (CSV output)
    Equi {
        /// Inclusive range: LO HI
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Vec<u64>,
        /// Cap axis: four reals (direction only)
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["A1", "A2", "A3", "A4"])]
        axis: Vec<f64>,
        /// Cap angular radius in radians, in (0, pi]
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Run the built-in oracle suites and exit nonzero on any failure
    Selftest,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = e.print();
                std::process::exit(0);
            }
            _ => {
                let _ = e.print();
                std::process::exit(1);
            }
        },
    };
    let code = match cli.command {
        Command::Approx { h, eps, side, subring, budget } => cmd_approx(&h, eps, side, subring, budget),
        Command::Count { n, kind, output } => cmd_count(n, kind, output),
        Command::Enum { n, kind, limit, budget } => cmd_enum(n, kind, limit, budget),
        Command::Equi { range, axis, theta, budget } => cmd_equi(&range, &axis, theta, budget),
        Command::Selftest => cmd_selftest(),
    };
    std::process::exit(code);
}

fn cmd_approx(h: &[f64], eps: f64, side: SideArg, subring: SubringArg, budget: u64) -> i32 {
    if !h.iter().all(|c| c.is_finite()) {
        eprintln!("error: target coefficients must be finite");
        return 1;
    }
    if !(eps > 0.0 && eps.is_finite()) {
        eprintln!("error: eps must be positive and finite");
        return 1;
    }
    if budget == 0 {
        eprintln!("error: budget must be at least 1");
        return 1;
    }
    let req = ApproxRequest::new(Quaternion::new(h[0], h[1], h[2], h[3]), eps)
        .side(match side {
            SideArg::Right => QuotientSide::Right,
            SideArg::Left => QuotientSide::Left,
        })
        .subring(match subring {
            SubringArg::H1 => Subring::H1,
            SubringArg::H2 => Subring::H2,
        })
        .budget(budget);
    match approximate(&req) {
        Ok(result) => {
            println!("{}", result.to_json());
            0
        }
        Err(Error::BudgetExhausted { best, stats }) => {
            let mut v = match best {
                Some(b) => b.to_json(),
                None => serde_json::json!({
                    "eps": eps,
                    "stats": {
                        "primes_tried": stats.primes_tried,
                        "lattice_points_scanned": stats.lattice_points_scanned,
                        "q_retries": stats.q_retries,
                    },
                }),
            };
            v["incomplete"] = serde_json::Value::Bool(true);
            println!("{v}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_count(n: u64, kind: KindArg, output: OutputArg) -> i32 {
    if n < 1 {
        eprintln!("error: n must be at least 1");
        return 1;
    }
    let (label, count) = match kind {
        KindArg::Squares => ("squares", r4(n)),
        KindArg::Hurwitz => ("hurwitz", hurwitz_count(n)),
    };
    match output {
        OutputArg::Text => println!("{count}"),
        OutputArg::Json => println!("{}", serde_json::json!({ "n": n, "kind": label, "count": count })),
    }
    0
}

fn cmd_enum(n: u64, kind: KindArg, limit: Option<u64>, budget: u64) -> i32 {
    let limit = limit.unwrap_or(u64::MAX) as usize;
    let rows: Result<Vec<[i64; 4]>, Error> = match kind {
        KindArg::Squares => {
            enumerate_four_squares_with_budget(n, budget).map(|v| v.into_iter().map(|p| p.0).collect())
        }
        KindArg::Hurwitz => {
            if n < 1 {
                eprintln!("error: n must be at least 1 for hurwitz enumeration");
                return 1;
            }
            enumerate_hurwitz_with_budget(n, budget).map(|v| v.into_iter().map(|a| a.doubled()).collect())
        }
    };
    match rows {
        Ok(rows) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            use std::io::Write;
            for row in rows.iter().take(limit) {
                writeln!(lock, "[{},{},{},{}]", row[0], row[1], row[2], row[3]).unwrap();
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_equi(range: &[u64], axis: &[f64], theta: f64, budget: u64) -> i32 {
    let cap = match Cap::new([axis[0], axis[1], axis[2], axis[3]], theta) {
        Ok(cap) => cap,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if range[0] > range[1] {
        eprintln!("error: range low end exceeds high end");
        return 1;
    }
    match equidistribution_report_with_budget(range[0], range[1], &cap, budget) {
        Ok(report) => {
            print!("{}", report.to_csv());
            println!(
                "# predicted={}, mean_rel_error={}, max_rel_error={}",
                report.predicted_ratio, report.mean_rel_error, report.max_rel_error
            );
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Deterministic xorshift-style generator for the selftest targets.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + unit * (hi - lo)
    }
}

fn cmd_selftest() -> i32 {
    let mut all_ok = true;
    let mut report = |name: &str, ok: bool| {
        println!("selftest {name}: {}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    };

    // four-square counts against a brute-force box scan
    let ok_squares = {
        let n_max = 500i64;
        let l = 23i64;
        let mut counts = vec![0u64; n_max as usize + 1];
        for a in -l..=l {
            for b in -l..=l {
                let sab = a * a + b * b;
                if sab > n_max {
                    continue;
                }
                for c in -l..=l {
                    let sabc = sab + c * c;
                    if sabc > n_max {
                        continue;
                    }
                    for d in -l..=l {
                        let s = sabc + d * d;
                        if s <= n_max {
                            counts[s as usize] += 1;
                        }
                    }
                }
            }
        }
        (1..=n_max as u64).all(|n| r4(n) == counts[n as usize])
    };
    report("four-square counts (n <= 500)", ok_squares);

    // Hurwitz counts against a brute-force doubled-coordinate scan
    let ok_hurwitz = {
        let n_max = 200u64;
        let m = 4 * n_max as i64;
        let l = (m as f64).sqrt() as i64 + 1;
        let mut counts = vec![0u64; n_max as usize + 1];
        for parity in 0..2i64 {
            let start = -l + (l + parity) % 2;
            let mut d1 = start;
            while d1 <= l {
                let mut d2 = start;
                while d2 <= l {
                    let s12 = d1 * d1 + d2 * d2;
                    if s12 <= m {
                        let mut d3 = start;
                        while d3 <= l {
                            let s123 = s12 + d3 * d3;
                            if s123 <= m {
                                let mut d4 = start;
                                while d4 <= l {
                                    let s = s123 + d4 * d4;
                                    if s <= m && s % 4 == 0 && (s / 4) as u64 <= n_max {
                                        counts[(s / 4) as usize] += 1;
                                    }
                                    d4 += 2;
                                }
                            }
                            d3 += 2;
                        }
                    }
                    d2 += 2;
                }
                d1 += 2;
            }
        }
        (1..=n_max).all(|n| hurwitz_count(n) == counts[n as usize])
    };
    report("hurwitz counts (n <= 200)", ok_hurwitz);

    // end-to-end approximation on deterministic pseudo-random targets
    let ok_approx = {
        let mut rng = SplitMix64(0x4855_5257_u64);
        (0..50).all(|_| {
            let h = Quaternion::new(
                rng.uniform(-3.0, 3.0),
                rng.uniform(-3.0, 3.0),
                rng.uniform(-3.0, 3.0),
                rng.uniform(-3.0, 3.0),
            );
            match approximate(&ApproxRequest::new(h, 0.25)) {
                Ok(r) => {
                    r.achieved_error < 0.25 && is_hurwitz_prime(&r.p) && is_hurwitz_prime(&r.q)
                }
                Err(_) => false,
            }
        })
    };
    report("approximation (50 targets, eps = 0.25)", ok_approx);

    // counting primitives used above stay consistent with each other
    let ok_consistency = {
        let unit_count = counting::enumerate_hurwitz(1).map(|v| v.len()).unwrap_or(0);
        unit_count == 24
            && counting::primes_in_interval(10.0, 20.0) == vec![11, 13, 17, 19]
            && HurwitzInt::from_doubled([2, 2, 0, 0]).map(|a| is_hurwitz_prime(&a)).unwrap_or(false)
    };
    report("unit group and interval primes", ok_consistency);

    if all_ok {
        0
    } else {
        1
    }
}
