//! Subcommands. Each returns its rendered output and exit status; errors are
//! reserved for usage problems and guard refusals.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use lahnet::lah::{
    lah_closed_form, lah_enumerate, lah_enumerate_unguarded, lah_matrix, lah_recurrence_table,
    verify_polynomial_identity,
};
use lahnet::lgv::{verify_all_against, verify_with_weights, SearchLimits};
use lahnet::network::{lah_network, unit_network, weight_matrix};
use lahnet::tnn::{
    check_variation_decreasing, is_totally_nonnegative, is_totally_nonnegative_unguarded,
};
use lahnet::{BigUint, ExactMatrix, IndexSet, Network};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{self, Format};

#[derive(Debug, Parser)]
#[command(
    name = "lahnet",
    version,
    about = "Lah numbers, planar networks and total non-negativity, in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; not every command supports every format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Lift size guards (tnn, enumerate, lgv).
    #[arg(
        long,
        global = true,
        env = "LGV_GUARD_OVERRIDE",
        value_parser = clap::builder::BoolishValueParser::new()
    )]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Lah matrix LM_n.
    Lah {
        #[arg(long, value_parser = positive)]
        n: usize,
        /// Print rows as "n: L(n,1) ... L(n,n)".
        #[arg(long)]
        triangle: bool,
    },
    /// Serialize the Lah network (or its unit-weight twin).
    Network {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long)]
        unit: bool,
    },
    /// Check that the network's weight matrix equals LM_n.
    VerifyTheorem {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_name = "R,C,W")]
        mutate_edge: Option<EdgeMutation>,
    },
    /// Compare one minor with the sum over vertex-disjoint path families.
    Lgv {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long)]
        rows: IndexSet,
        #[arg(long)]
        cols: IndexSet,
        #[arg(long)]
        unit: bool,
        #[arg(long, value_name = "R,C,W")]
        mutate_edge: Option<EdgeMutation>,
    },
    /// Run the minor/family comparison for every index-set pair up to a size.
    LgvExhaustive {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_parser = positive)]
        max_size: usize,
        #[arg(long)]
        unit: bool,
        #[arg(long, value_name = "R,C,W")]
        mutate_edge: Option<EdgeMutation>,
    },
    /// Certify total non-negativity by checking every minor.
    Tnn {
        #[arg(long, value_parser = positive)]
        m: Option<usize>,
        /// Explicit matrix, rows separated by ';' and entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Sample x and test Var(Mx) <= Var(x).
    Varcheck {
        #[arg(long, value_parser = positive)]
        m: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 1000, value_parser = positive)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
        entry_bound: u64,
    },
    /// Check the rising/falling factorial expansion with Lah coefficients.
    Identity {
        #[arg(long)]
        n: usize,
        /// Check every degree from 0 to n.
        #[arg(long)]
        all: bool,
    },
    /// Compare brute-force enumeration with the recurrence and closed form.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// `R,C,W`: set the diagonal edge leaving grid vertex `u[R,C]` to weight `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMutation {
    pub row: usize,
    pub col: usize,
    pub weight: BigUint,
}

impl FromStr for EdgeMutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [r, c, w] = parts[..] else {
            return Err(format!("expected R,C,W, got {s:?}"));
        };
        let num = |x: &str| x.parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
        Ok(EdgeMutation {
            row: num(r)?,
            col: num(c)?,
            weight: w.parse().map_err(|_| format!("{w:?} is not a weight"))?,
        })
    }
}

impl EdgeMutation {
    pub fn apply(&self, network: &Network) -> Result<Network, CliError> {
        let (r, c) = (self.row, self.col);
        let missing = || CliError::Usage(format!("no diagonal edge leaves u[{r},{c}]"));
        let tail = network.grid_vertex(r, c).ok_or_else(missing)?;
        let head = r
            .checked_sub(1)
            .and_then(|up| network.grid_vertex(up, c))
            .ok_or_else(missing)?;
        Ok(network.with_edge_weight(tail, head, self.weight.clone())?)
    }
}

/// What a command prints and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub exit_code: u8,
    pub warnings: Vec<String>,
}

impl Output {
    fn new(stdout: String, verified: bool) -> Self {
        Output {
            stdout,
            exit_code: if verified { 0 } else { 1 },
            warnings: Vec::new(),
        }
    }
}

fn json_doc(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn build_network(n: usize, unit: bool) -> Network {
    if unit {
        unit_network(n)
    } else {
        lah_network(n)
    }
}

fn explicit_or_lah(m: Option<usize>, matrix: Option<&str>) -> Result<ExactMatrix, CliError> {
    match (m, matrix) {
        (_, Some(spec)) => {
            let parsed = format::parse_matrix_spec(spec)?;
            if let Some(m) = m {
                if parsed.rows() != m {
                    return Err(CliError::Usage(format!(
                        "--m {m} does not match the {}x{} --matrix",
                        parsed.rows(),
                        parsed.cols()
                    )));
                }
            }
            Ok(parsed)
        }
        (Some(m), None) => Ok(lah_matrix(m)?.into_matrix()),
        (None, None) => Err(CliError::Usage("pass --m or --matrix".into())),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let fmt = cli.format;
    let limits = if cli.force {
        SearchLimits {
            max_combinations: u64::MAX,
        }
    } else {
        SearchLimits::default()
    };
    let mut out = match &cli.command {
        Command::Lah { n, triangle } => {
            let lm = lah_matrix(*n)?;
            let text = match fmt {
                Format::Text if *triangle => format::triangle_text(&lah_recurrence_table(*n), *n),
                Format::Text => format::matrix_to_text(lm.matrix()),
                Format::Json => json_doc(&format::matrix_to_json(lm.matrix())),
                Format::Csv => format::matrix_to_csv(lm.matrix())?,
                Format::Dot => return Err(unsupported("lah", fmt)),
            };
            Output::new(text, true)
        }
        Command::Network { n, unit } => {
            let network = build_network(*n, *unit);
            let name = if *unit {
                format!("unit_network_{n}")
            } else {
                format!("lah_network_{n}")
            };
            let text = match fmt {
                Format::Text => format::network_to_text(&network),
                Format::Json => json_doc(&format::network_to_json(&network)),
                Format::Dot => format::network_to_dot(&network, &name),
                Format::Csv => return Err(unsupported("network", fmt)),
            };
            Output::new(text, true)
        }
        Command::VerifyTheorem { n, mutate_edge } => {
            let mut network = lah_network(*n);
            if let Some(m) = mutate_edge {
                network = m.apply(&network)?;
            }
            let w = weight_matrix(&network);
            let lm = lah_matrix(*n)?;
            let diff = w.first_difference(lm.matrix());
            let text = match (fmt, diff) {
                (Format::Json, d) => json_doc(&json!({
                    "n": n,
                    "equal": d.is_none(),
                    "first_difference": d.map(|(i, j)| json!({
                        "row": i,
                        "col": j,
                        "weight": w.entry(i, j).to_string(),
                        "lah": lm.matrix().entry(i, j).to_string(),
                    })),
                })),
                (Format::Text, None) => {
                    format!("PASS: weight matrix of the n = {n} network equals LM_{n}\n")
                }
                (Format::Text, Some((i, j))) => format!(
                    "FAIL: cell ({i},{j}) has path weight sum {} but L({i},{j}) = {}\n",
                    w.entry(i, j),
                    lm.matrix().entry(i, j)
                ),
                _ => return Err(unsupported("verify-theorem", fmt)),
            };
            Output::new(text, diff.is_none())
        }
        Command::Lgv {
            n,
            rows,
            cols,
            unit,
            mutate_edge,
        } => {
            let reference = build_network(*n, *unit);
            let weights = weight_matrix(&reference);
            let network = match mutate_edge {
                Some(m) => m.apply(&reference)?,
                None => reference,
            };
            let report = verify_with_weights(&network, &weights, rows, cols, limits)?;
            let text = match fmt {
                Format::Text => format::lindstrom_text(&report),
                Format::Json => json_doc(&format::lindstrom_json(&report)),
                _ => return Err(unsupported("lgv", fmt)),
            };
            Output::new(text, report.equal())
        }
        Command::LgvExhaustive {
            n,
            max_size,
            unit,
            mutate_edge,
        } => {
            let reference = build_network(*n, *unit);
            let weights = weight_matrix(&reference);
            let network = match mutate_edge {
                Some(m) => m.apply(&reference)?,
                None => reference,
            };
            let summary = verify_all_against(&network, &weights, *max_size, limits)?;
            let text = match fmt {
                Format::Text => {
                    let mut s = format!(
                        "{} index-set pairs checked (n = {n}, sizes 1..={}): {} failures\n",
                        summary.pairs_checked,
                        max_size.min(n),
                        summary.failures.len()
                    );
                    for f in &summary.failures {
                        s.push_str(&format::lindstrom_text(f));
                    }
                    s
                }
                Format::Json => json_doc(&format::exhaustive_json(&summary)),
                _ => return Err(unsupported("lgv-exhaustive", fmt)),
            };
            Output::new(text, summary.all_equal())
        }
        Command::Tnn { m, matrix } => {
            let a = explicit_or_lah(*m, matrix.as_deref())?;
            let report = if cli.force {
                is_totally_nonnegative_unguarded(&a)?
            } else {
                is_totally_nonnegative(&a)?
            };
            let text = match fmt {
                Format::Text => format::tnn_text(&report),
                Format::Json => json_doc(&format::tnn_json(&report)),
                _ => return Err(unsupported("tnn", fmt)),
            };
            Output::new(text, report.is_tnn())
        }
        Command::Varcheck {
            m,
            matrix,
            samples,
            seed,
            entry_bound,
        } => {
            let a = explicit_or_lah(*m, matrix.as_deref())?;
            let report = check_variation_decreasing(&a, *samples, *seed, *entry_bound)?;
            let text = match fmt {
                Format::Text => format::variation_text(&report),
                Format::Json => json_doc(&format::variation_json(&report)),
                _ => return Err(unsupported("varcheck", fmt)),
            };
            Output::new(text, report.holds())
        }
        Command::Identity { n, all } => {
            let degrees = if *all { 0..=*n } else { *n..=*n };
            let reports: Vec<_> = degrees.map(verify_polynomial_identity).collect();
            let holds = reports.iter().all(|r| r.holds());
            let text = match fmt {
                Format::Text => reports.iter().map(format::identity_text).collect(),
                Format::Json if *all => json_doc(&json!({
                    "all_hold": holds,
                    "reports": reports.iter().map(format::identity_json).collect::<Vec<_>>(),
                })),
                Format::Json => json_doc(&format::identity_json(&reports[0])),
                _ => return Err(unsupported("identity", fmt)),
            };
            Output::new(text, holds)
        }
        Command::Enumerate { n, k } => {
            let ks = match k {
                Some(k) => *k..=*k,
                None => 0..=*n,
            };
            let table = lah_recurrence_table(*n);
            let mut rows = Vec::new();
            for k in ks {
                let enumerated = if cli.force {
                    lah_enumerate_unguarded(*n, k)
                } else {
                    lah_enumerate(*n, k)?
                };
                rows.push((k, enumerated, table.get(*n, k), lah_closed_form(*n, k)));
            }
            let agree = rows.iter().all(|(_, e, r, c)| e == r && r == c);
            let text = match fmt {
                Format::Text => {
                    let mut s = String::from("k enumeration recurrence closed_form\n");
                    for (k, e, r, c) in &rows {
                        let _ = writeln!(s, "{k} {e} {r} {c}");
                    }
                    s.push_str(if agree {
                        "all routes agree\n"
                    } else {
                        "MISMATCH\n"
                    });
                    s
                }
                Format::Json => json_doc(&json!({
                    "n": n,
                    "all_agree": agree,
                    "rows": rows.iter().map(|(k, e, r, c)| json!({
                        "k": k,
                        "enumeration": e.to_string(),
                        "recurrence": r.to_string(),
                        "closed_form": c.to_string(),
                    })).collect::<Vec<_>>(),
                })),
                _ => return Err(unsupported("enumerate", fmt)),
            };
            Output::new(text, agree)
        }
    };
    let guarded = matches!(
        cli.command,
        Command::Tnn { .. }
            | Command::Enumerate { .. }
            | Command::Lgv { .. }
            | Command::LgvExhaustive { .. }
    );
    if cli.force && guarded {
        out.warnings.push("size guards lifted by --force".into());
    }
    Ok(out)
}
