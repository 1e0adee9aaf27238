use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use permword::derivation::{certify, dist_bfs, Derivation, DEFAULT_NODE_LIMIT};
use permword::diagram::{certify_digon_free, compact, reversing_diagram_with, to_derivation};
use permword::experiments;
use permword::export::{render, Format};
use permword::families::{flip_pair, quartic_pair, validate_ba, validate_dc};
use permword::invariants::lower_bound;
use permword::normal_form::{derive, nf};
use permword::reversing::{Reverser, Strategy, DEFAULT_BUDGET};
use permword::{Error, ExtendedWord, Word};

/// Braid relations, distances and subword reversing for reduced expressions
/// of permutations.
///
/// Words are dotted generator indices, `1.2.1` for s1 s2 s1, and `e` for the
/// empty word. Inverse letters in extended words are negative: `-1.2`.
#[derive(Parser)]
#[command(name = "permword", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the payload to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// Number of strands.
    #[arg(long)]
    n: usize,
    u: String,
    v: String,
}

#[derive(Args)]
struct Engine {
    /// Maximal number of reversing steps.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
    Svg,
    Tikz,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
            FormatArg::Svg => Format::Svg,
            FormatArg::Tikz => Format::Tikz,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normal expression of a word.
    Nf {
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Whether two words represent the same permutation.
    Equiv(Pair),
    /// Lower bound, exact distance and the normal-form derivation length.
    Dist {
        #[command(flatten)]
        pair: Pair,
        /// Maximal number of words the breadth-first search may visit.
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: usize,
    },
    /// The lower bound i3 + i22.
    Lower(Pair),
    /// A derivation through the common normal form.
    Derive(Pair),
    /// Name-based and digon-free optimality certificates.
    Certify {
        #[command(flatten)]
        pair: Pair,
        /// Certify a derivation read from this JSON file instead of the pair's
        /// reversing diagram.
        #[arg(long)]
        derivation: Option<PathBuf>,
        #[command(flatten)]
        engine: Engine,
    },
    /// Reverse an extended word, or the quotient ū v of two words.
    Reverse {
        #[arg(long)]
        n: usize,
        /// An extended word, or two positive words u and v.
        #[arg(num_args = 1..=2, required = true, allow_hyphen_values = true)]
        words: Vec<String>,
        /// Render the diagram of a pair instead of the summary.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[command(flatten)]
        engine: Engine,
    },
    /// Reversing complexity: the number of hexagons and squares.
    Compl {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        engine: Engine,
    },
    /// Compact a reversing diagram and report remaining digons.
    Compact {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[command(flatten)]
        engine: Engine,
    },
    /// Word families.
    #[command(subcommand)]
    Family(Family),
    /// Batch measurements as CSV.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Write a reversing diagram in one of the export formats.
    Export {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "svg")]
        format: FormatArg,
        /// Export the compacted diagram.
        #[arg(long)]
        compact: bool,
        #[command(flatten)]
        engine: Engine,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The two expressions of the flip with mirrored name sequences.
    Flip {
        #[arg(long)]
        n: usize,
    },
    /// The pair s_2l ... s_4 s_2 and s_1 s_3 ... s_{2l-1} on 2l+2 strands.
    Quartic {
        #[arg(long)]
        l: usize,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Columns: l, engine_count, formula_value, typeI, typeII, typeIII, digon_free.
    Quartic {
        #[arg(long, default_value_t = 5)]
        lmax: usize,
    },
    /// Block reversing checks. Columns: family, p, expected_count, nontrivial,
    /// digons, terminal_ok, passed.
    Blocks {
        #[arg(long, default_value_t = 6)]
        pmax: usize,
    },
    /// Sampled complexity of random reduced pairs. Columns: n, l, samples,
    /// max_compl, mean_compl, max_over_n2l.
    Growth {
        /// Strand counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "4,6,8")]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        lmax: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Maximal complexity N(n, l) over all expressions of length l, for
    /// n up to 2l+2. Columns: l, n, method, pairs, max_compl.
    Stabilization {
        #[arg(long, default_value_t = 3)]
        lmax: usize,
        /// Pair count above which sampling replaces enumeration.
        #[arg(long, default_value_t = 2_000_000)]
        exhaustive_limit: u64,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// How often the lower bound equals the distance: all pairs on 4 strands,
    /// sampled pairs on 5. Columns: n, method, pairs, equal, gaps.
    Equality {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: usize,
    },
}

fn pair(p: &Pair) -> Result<(Word, Word), Error> {
    Ok((Word::parse(p.n, &p.u)?, Word::parse(p.n, &p.v)?))
}

fn reverser(e: &Engine) -> Reverser {
    Reverser::new(Strategy::Leftmost, e.budget)
}

fn run(cli: &Cli) -> Result<String, Error> {
    let json = cli.json;
    let out = match &cli.command {
        Command::Nf { n, word } => {
            let w = nf(&Word::parse(*n, word)?);
            if json {
                json!({ "nf": w.to_string() }).to_string()
            } else {
                w.to_string()
            }
        }
        Command::Equiv(p) => {
            let (u, v) = pair(p)?;
            let eq = u.is_equivalent(&v)?;
            if json {
                json!({ "equivalent": eq }).to_string()
            } else {
                eq.to_string()
            }
        }
        Command::Dist { pair: p, node_limit } => {
            let (u, v) = pair(p)?;
            let lower = lower_bound(&u, &v)?.total();
            let bfs = dist_bfs(&u, &v, *node_limit)?;
            let upper = p.n * (p.n - 1) * u.len() / 2;
            let derived = derive(&u, &v)?.len();
            if json {
                json!({ "lower": lower, "bfs": bfs, "upper": upper, "derivation": derived }).to_string()
            } else {
                format!("lower={lower} bfs={bfs} upper≤{upper} derivation={derived}")
            }
        }
        Command::Lower(p) => {
            let (u, v) = pair(p)?;
            let lb = lower_bound(&u, &v)?;
            if json {
                serde_json::to_string(&json!({ "i3": lb.i3, "i22": lb.i22, "lower": lb.total() })).unwrap()
            } else {
                format!("i3={} i22={} lower={}", lb.i3, lb.i22, lb.total())
            }
        }
        Command::Derive(p) => {
            let (u, v) = pair(p)?;
            let d = derive(&u, &v)?;
            if json {
                d.to_json()
            } else {
                let words: Vec<String> = d.words()?.iter().map(Word::to_string).collect();
                words.join("\n")
            }
        }
        Command::Certify {
            pair: p,
            derivation,
            engine,
        } => {
            let (u, v) = pair(p)?;
            let (d, digon) = match derivation {
                Some(path) => {
                    let text =
                        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    (Derivation::from_json(&text, Some(p.n))?, None)
                }
                None => {
                    let g = reversing_diagram_with(&u, &v, &reverser(engine))?;
                    (to_derivation(&g)?, Some(certify_digon_free(&g)?))
                }
            };
            let names = certify(&d)?;
            if json {
                json!({ "steps": d.len(), "names": names, "digon_free": digon }).to_string()
            } else {
                let dups: Vec<String> = names.duplicates.iter().map(|n| n.to_string()).collect();
                let mut s = format!(
                    "names: {:?} steps={} duplicates=[{}]",
                    names.verdict,
                    d.len(),
                    dups.join(", ")
                );
                if let Some(c) = digon {
                    s.push_str(&format!("\ndigon-free: {:?}", c.verdict));
                }
                s
            }
        }
        Command::Reverse {
            n,
            words,
            format,
            engine,
        } => {
            let r = reverser(engine);
            match (words.as_slice(), format) {
                ([u, v], Some(f)) => {
                    let g = reversing_diagram_with(&Word::parse(*n, u)?, &Word::parse(*n, v)?, &r)?;
                    render(&g, (*f).into())
                }
                (_, Some(_)) => return Err(Error::Parse("--format needs two positive words u and v".into())),
                _ => {
                    let w = match words.as_slice() {
                        [u, v] => ExtendedWord::quotient(&Word::parse(*n, u)?, &Word::parse(*n, v)?)?,
                        [x] => ExtendedWord::parse(*n, x)?,
                        _ => unreachable!("clap accepts one or two words"),
                    };
                    let res = r.reverse(&w)?;
                    if json {
                        json!({
                            "terminal": res.terminal.to_string(),
                            "u_prime": res.u_prime.to_string(),
                            "v_prime": res.v_prime.to_string(),
                            "counts": res.counts,
                            "steps": res.steps,
                        })
                        .to_string()
                    } else {
                        format!(
                            "terminal={} u'={} v'={} {}",
                            res.terminal, res.u_prime, res.v_prime, res.counts
                        )
                    }
                }
            }
        }
        Command::Compl { pair: p, engine } => {
            let (u, v) = pair(p)?;
            let c = reverser(engine).reverse_pair(&u, &v)?.counts;
            if json {
                json!({ "compl": c.nontrivial(), "counts": c }).to_string()
            } else {
                format!("{} ({c})", c.nontrivial())
            }
        }
        Command::Compact {
            pair: p,
            format,
            engine,
        } => {
            let (u, v) = pair(p)?;
            let g = compact(&reversing_diagram_with(&u, &v, &reverser(engine))?);
            match format {
                Some(f) => render(&g, (*f).into()),
                None => {
                    let verdict = certify_digon_free(&g).map(|c| format!("{:?}", c.verdict));
                    let verdict = verdict.unwrap_or_else(|e| format!("unavailable ({e})"));
                    if json {
                        json!({ "nontrivial": g.nontrivial(), "free_digons": g.free_digons(), "verdict": verdict })
                            .to_string()
                    } else {
                        format!(
                            "nontrivial={} free_digons={} verdict={verdict}",
                            g.nontrivial(),
                            g.free_digons()
                        )
                    }
                }
            }
        }
        Command::Family(f) => {
            let (u, v) = match f {
                Family::Flip { n } => flip_pair(*n)?,
                Family::Quartic { l } => quartic_pair(*l)?,
            };
            if json {
                json!({ "n": u.n(), "u": u.to_string(), "v": v.to_string() }).to_string()
            } else {
                format!("n={}\nu={u}\nv={v}", u.n())
            }
        }
        Command::Experiment(e) => experiment(e)?,
        Command::Export {
            pair: p,
            format,
            compact: fuse,
            engine,
        } => {
            let (u, v) = pair(p)?;
            let mut g = reversing_diagram_with(&u, &v, &reverser(engine))?;
            if *fuse {
                g = compact(&g);
            }
            render(&g, (*format).into())
        }
    };
    Ok(out)
}

fn experiment(e: &Experiment) -> Result<String, Error> {
    Ok(match e {
        Experiment::Quartic { lmax } => experiments::quartic_csv(&experiments::quartic_rows(*lmax)?),
        Experiment::Blocks { pmax } => {
            let mut reports = Vec::new();
            for p in 1..=*pmax {
                reports.push(validate_ba(p)?);
                reports.push(validate_dc(p)?);
            }
            experiments::blocks_csv(&reports)
        }
        Experiment::Growth {
            ns,
            lmax,
            samples,
            seed,
        } => experiments::growth_csv(&experiments::growth_rows(ns, *lmax, *samples, *seed)?),
        Experiment::Stabilization {
            lmax,
            exhaustive_limit,
            samples,
            seed,
        } => experiments::stabilization_csv(&experiments::stabilization_rows(
            *lmax,
            *exhaustive_limit,
            *samples,
            *seed,
        )?),
        Experiment::Equality {
            samples,
            seed,
            node_limit,
        } => {
            let rows = [
                experiments::equality_exhaustive(4, *node_limit)?,
                experiments::equality_sampled(5, *samples, *seed, *node_limit)?,
            ];
            experiments::equality_csv(&rows)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(payload) => {
            let payload = if payload.ends_with('\n') {
                payload
            } else {
                payload + "\n"
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, payload) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{payload}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
