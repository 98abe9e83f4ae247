//! Batch driver behind the `deltahall` binary.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Parser;
use serde_json::{json, Value};

use crate::checks::{run_check, Suite};
use crate::coeff::QuadNumber;
use crate::delta::{derived_hall_number, DeltaAlgebra};
use crate::error::{Error, Result};
use crate::extended::{ExtElement, ExtendedAlgebra, Lattice, TwistForm};
use crate::hall::hall_structure_constant;
use crate::quiver::{K0Class, Quiver};
use crate::repcat::Caps;

#[derive(Debug, Clone, Parser)]
#[command(name = "deltahall", version, about = "Exact Delta-Hall algebras of quiver representations")]
pub struct Args {
    /// Quiver JSON: {"vertices": n, "arrows": [[s, t], ...]}
    #[arg(long)]
    pub quiver: PathBuf,
    /// Prime field size
    #[arg(long)]
    pub q: u64,
    /// Total-dimension bound of the catalog
    #[arg(long = "max-dim")]
    pub max_dim: u32,
    /// Write JSON here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// green|assoc|ext-assoc|twist-assoc|derived-iso|central|parity|lemma43|tensor|rank1|rank2|commute
    #[arg(long, conflicts_with = "table")]
    pub check: Option<String>,
    /// hall|delta|derived|ext|twisted
    #[arg(long)]
    pub table: Option<String>,
    /// Twist JSON {"T": [[...]]}
    #[arg(long)]
    pub twist: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long = "cap-matrices", default_value_t = Caps::default().matrices)]
    pub cap_matrices: u64,
    #[arg(long = "cap-subspaces", default_value_t = Caps::default().subspaces)]
    pub cap_subspaces: u64,
    #[arg(long = "cap-homs", default_value_t = Caps::default().homs)]
    pub cap_homs: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Hall,
    Delta,
    Derived,
    Ext,
    Twisted,
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hall" => Ok(Table::Hall),
            "delta" => Ok(Table::Delta),
            "derived" => Ok(Table::Derived),
            "ext" => Ok(Table::Ext),
            "twisted" => Ok(Table::Twisted),
            _ => Err(Error::Config(format!("unknown table {s:?}"))),
        }
    }
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub summary: String,
    /// False iff a check suite found a counterexample.
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Exit status for an error: 2 for configuration and caps, 1 otherwise.
pub fn error_exit_code(e: &Error) -> u8 {
    if e.is_configuration() {
        2
    } else {
        1
    }
}

fn caps(args: &Args) -> Result<Caps> {
    if args.cap_matrices == 0 || args.cap_subspaces == 0 || args.cap_homs == 0 {
        return Err(Error::Config("caps must be positive".into()));
    }
    Ok(Caps { matrices: args.cap_matrices, subspaces: args.cap_subspaces, homs: args.cap_homs })
}

fn load_twist(path: &PathBuf) -> Result<TwistForm> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    TwistForm::from_json(&value)
}

/// Runs on a pool of `args.jobs` workers.
pub fn run(args: &Args) -> Result<Outcome> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        if j == 0 {
            return Err(Error::Config("--jobs must be positive".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| run_inner(args))
}

fn run_inner(args: &Args) -> Result<Outcome> {
    let quiver = Quiver::load(&args.quiver)?;
    let check = args.check.as_deref().map(Suite::from_str).transpose()?;
    let table = args.table.as_deref().map(Table::from_str).transpose()?;
    let twist = args.twist.as_ref().map(load_twist).transpose()?;
    let delta = DeltaAlgebra::build(&quiver, args.q, args.max_dim, caps(args)?)?;
    match (check, table) {
        (Some(suite), _) => {
            let report = run_check(&delta, suite, twist.as_ref())?;
            let summary = format!(
                "{suite}: {} ({} identities checked, {} failures)",
                if report.passed() { "pass" } else { "FAIL" },
                report.checked,
                report.failures.len()
            );
            Ok(Outcome { json: report.to_json(&delta), summary, passed: report.passed() })
        }
        (None, Some(which)) => {
            let rows = table_json(&delta, which, twist)?;
            let summary = format!("{} entries", rows.len());
            Ok(Outcome { json: Value::Array(rows), summary, passed: true })
        }
        (None, None) => {
            let cat = delta.catalog();
            Ok(Outcome { json: cat.to_json(), summary: format!("{} classes", cat.len()), passed: true })
        }
    }
}

/// Structure constants in canonical `(a, b, m)` order.
pub fn table_json(delta: &DeltaAlgebra, which: Table, twist: Option<TwistForm>) -> Result<Vec<Value>> {
    let t = delta.tables();
    let cat = t.catalog();
    let bound = cat.max_dim();
    let n = cat.quiver().vertex_count();
    let ext = match which {
        Table::Ext => Some(ExtendedAlgebra::new(delta, Lattice::Integral)),
        Table::Twisted => Some(ExtendedAlgebra::twisted(
            delta,
            twist.unwrap_or_else(|| TwistForm::semi_derived(cat.quiver())),
        )?),
        _ => None,
    };
    let mut rows = Vec::new();
    for a in cat.ids() {
        for b in cat.ids() {
            if cat.total(a) + cat.total(b) > bound {
                continue;
            }
            match (&ext, which) {
                (Some(alg), _) => {
                    let zero = K0Class::zero(n);
                    let prod: ExtElement = alg.product(&alg.basis(a, &zero), &alg.basis(b, &zero))?;
                    for (label, c) in prod.iter() {
                        rows.push(json!({"a": a, "b": b, "m": label.class, "kshift": label.kappa.doubled, "coeff": c.to_json()}));
                    }
                }
                (None, Table::Hall) => {
                    let dim = cat.dim(a).add(cat.dim(b));
                    for &m in cat.classes_with_dim(&dim) {
                        let c = hall_structure_constant(t, a, b, m)?;
                        if c != num_traits::Zero::zero() {
                            rows.push(json!({"a": a, "b": b, "m": m, "coeff": t.field().rational(c).to_json()}));
                        }
                    }
                }
                (None, Table::Delta) => {
                    for (m, c) in delta.structure(a, b)? {
                        rows.push(row(a, b, *m, c));
                    }
                }
                (None, _) => {
                    for (m, _) in delta.structure(a, b)? {
                        let g = derived_hall_number(t, a, b, *m);
                        rows.push(row(a, b, *m, &g));
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn row(a: usize, b: usize, m: usize, c: &QuadNumber) -> Value {
    json!({"a": a, "b": b, "m": m, "coeff": c.to_json()})
}

/// Serializes the outcome and writes it to `args.out` or returns it for stdout.
pub fn render(outcome: &Outcome) -> String {
    let mut s = serde_json::to_string_pretty(&outcome.json).expect("serializable");
    s.push('\n');
    s
}

pub fn write_output(args: &Args, outcome: &Outcome) -> Result<Option<String>> {
    let text = render(outcome);
    match &args.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}
