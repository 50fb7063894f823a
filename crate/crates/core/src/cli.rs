//! The `arquiver` command line, as a library function so it can be tested in process.
//!
//! Exit codes: 0 success (or a predicate that holds, or a confirmed
//! counterexample), 1 a predicate or check that fails, 2 bad input,
//! 3 an inconclusive search.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::MonomialAlgebra;
use crate::catalog;
use crate::decomp::{self, SearchConfig};
use crate::dsl::{self, AlgebraSpec};
use crate::error::{Error, ParseError};
use crate::homology;
use crate::linalg::PrimeField;
use crate::repmod::{self, Representation};
use crate::verify::{self, ModuleNames, ModuleSummary};

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "ARQUIVER_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "arquiver",
    version,
    about = "Exact homological algebra over monomial quiver algebras over GF(p)"
)]
pub struct Cli {
    /// Algebra description file; defaults to KQ/<xy, yz, zx, x^3> on x: 1->1, y: 1->2, z: 2->1.
    #[arg(long, global = true, value_name = "FILE")]
    pub algebra: Option<PathBuf>,
    /// Prime field GF(p), overriding the algebra file.
    #[arg(long, global = true, value_name = "P")]
    pub field: Option<u32>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized searches.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

/// Module arguments are expressions such as `quot(x + z)`, or `@path` to read one from a file.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe the algebra.
    Info,
    /// Evaluate a module expression.
    Eval { expr: String },
    /// n-th syzygy.
    Syzygy { expr: String, n: usize },
    /// Auslander-Reiten translate D Tr.
    Tau { expr: String },
    /// Auslander-Bridger transpose (a module over the opposite algebra).
    Transpose { expr: String },
    /// Ext^1(X, Y) with the middle term of each basis extension.
    Ext { x: String, y: String },
    /// Krull-Schmidt decomposition.
    Decompose { expr: String },
    /// Is the module a direct summand of an n-th syzygy?
    IsNthSyzygy { expr: String, n: usize },
    /// Membership in tau(Omega^i(mod A)), closed under direct summands.
    InTauOmega { expr: String, i: usize },
    /// Check that tau(Omega^2(mod A)) is not closed under extensions.
    VerifyCounterexample,
}

/// What a run printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_inconclusive() {
            Failure::Inconclusive(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Input(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Inconclusive(msg)) => Outcome {
            code: 3,
            stdout: String::new(),
            stderr: format!("inconclusive: {msg}\n"),
        },
    }
}

fn load_algebra(cli: &Cli) -> CliResult<Arc<MonomialAlgebra>> {
    let spec = match &cli.algebra {
        None => AlgebraSpec::from_algebra(&catalog::counterexample_algebra(PrimeField::default())),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            AlgebraSpec::parse(&text)
                .map_err(|e| Failure::Input(format!("{}:{e}", path.display())))?
        }
    };
    let spec = match cli.field {
        Some(p) => spec.with_field(p),
        None => spec,
    };
    Ok(spec.build()?)
}

fn config(cli: &Cli) -> CliResult<SearchConfig> {
    let seed = match cli.seed {
        Some(s) => Some(s),
        None => match std::env::var(SEED_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse()
                    .map_err(|_| Failure::Input(format!("{SEED_ENV}={v:?} is not a u64")))?,
            ),
            Err(_) => None,
        },
    };
    Ok(seed.map_or_else(SearchConfig::default, SearchConfig::with_seed))
}

fn module(algebra: &Arc<MonomialAlgebra>, arg: &str) -> CliResult<Representation> {
    let (origin, text) = match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            (path.to_string(), text)
        }
        None => ("<expr>".to_string(), arg.to_string()),
    };
    dsl::eval_str(algebra, &text).map_err(|e: ParseError| Failure::Input(format!("{origin}:{e}")))
}

fn positive(n: usize, what: &str) -> CliResult<()> {
    if n == 0 {
        Err(Failure::Input(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}

fn execute(cli: &Cli) -> CliResult<(i32, String)> {
    let algebra = load_algebra(cli)?;
    let cfg = config(cli)?;
    let names = ModuleNames::standard(&algebra)?;
    let ctx = Ctx {
        algebra: &algebra,
        names: &names,
        json: cli.json,
    };
    match &cli.command {
        Command::Info => Ok((0, ctx.info())),
        Command::Eval { expr } => Ok((0, ctx.module_out(&module(&algebra, expr)?))),
        Command::Syzygy { expr, n } => {
            let m = homology::syzygy(&module(&algebra, expr)?, *n);
            Ok((0, ctx.module_out(&m)))
        }
        Command::Tau { expr } => Ok((0, ctx.module_out(&homology::tau(&module(&algebra, expr)?)))),
        Command::Transpose { expr } => Ok((
            0,
            ctx.module_out(&homology::transpose(&module(&algebra, expr)?)),
        )),
        Command::Ext { x, y } => ctx.ext(&module(&algebra, x)?, &module(&algebra, y)?, &cfg),
        Command::Decompose { expr } => ctx.decompose(&module(&algebra, expr)?, &cfg),
        Command::IsNthSyzygy { expr, n } => {
            positive(*n, "n")?;
            ctx.nth_syzygy(&module(&algebra, expr)?, *n, &cfg)
        }
        Command::InTauOmega { expr, i } => {
            positive(*i, "i")?;
            ctx.tau_omega(&module(&algebra, expr)?, *i, &cfg)
        }
        Command::VerifyCounterexample => {
            let report = verify::verify_counterexample(&algebra, &cfg)?;
            let out = if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            Ok((report.exit_code(), out))
        }
    }
}

struct Ctx<'a> {
    algebra: &'a Arc<MonomialAlgebra>,
    names: &'a ModuleNames,
    json: bool,
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn summary_json(s: &ModuleSummary) -> Value {
    serde_json::to_value(s).expect("summary serializes")
}

impl Ctx<'_> {
    fn algebra_label(&self, m: &Representation) -> String {
        if m.algebra().same_as(self.algebra) {
            self.algebra.name().to_string()
        } else {
            format!("{}^op", self.algebra.name())
        }
    }

    fn info(&self) -> String {
        let a = self.algebra;
        let q = a.quiver();
        let spec = dsl::print_algebra(a);
        let per_vertex: Vec<(Vec<usize>, Vec<usize>)> = (0..a.vertex_count())
            .map(|i| {
                let p = repmod::projective(a, i).expect("vertex in range");
                let inj = repmod::injective(a, i).expect("vertex in range");
                (p.dims().to_vec(), inj.dims().to_vec())
            })
            .collect();
        if self.json {
            let arrows: Vec<Value> = q
                .arrows()
                .iter()
                .map(|ar| json!({"label": ar.label, "source": ar.source + 1, "target": ar.target + 1}))
                .collect();
            let relations: Vec<String> = a.relations().iter().map(|r| a.path_name(r)).collect();
            let proj: Vec<Value> = per_vertex
                .iter()
                .enumerate()
                .map(|(i, (p, inj))| json!({"vertex": i + 1, "projective": p, "injective": inj}))
                .collect();
            return pretty(&json!({
                "name": a.name(),
                "field": a.field().modulus(),
                "vertices": q.vertex_count(),
                "arrows": arrows,
                "relations": relations,
                "dimension": a.dimension(),
                "basis": a.basis_names(),
                "indecomposable_projectives": proj,
                "spec": spec,
            }));
        }
        let mut s = spec;
        let _ = writeln!(s, "dimension {}", a.dimension());
        let _ = writeln!(s, "basis {}", a.basis_names().join(" "));
        for (i, (p, inj)) in per_vertex.iter().enumerate() {
            let _ = writeln!(s, "P{0} {p:?}  I{0} {inj:?}", i + 1);
        }
        s
    }

    fn module_json(&self, m: &Representation) -> Value {
        let q = m.algebra().quiver();
        let actions: Vec<Value> = q
            .arrows()
            .iter()
            .zip(m.actions())
            .map(|(a, mat)| {
                let rows: Vec<Vec<u32>> = (0..mat.rows()).map(|r| mat.row(r).to_vec()).collect();
                json!({"label": a.label, "source": a.source + 1, "target": a.target + 1, "matrix": rows})
            })
            .collect();
        json!({
            "algebra": self.algebra_label(m),
            "dims": m.dims(),
            "name": self.names.name_of(m),
            "actions": actions,
        })
    }

    fn module_out(&self, m: &Representation) -> String {
        if self.json {
            return pretty(&self.module_json(m));
        }
        let mut s = format!("over {}\n", self.algebra_label(m));
        if let Some(n) = self.names.name_of(m) {
            let _ = writeln!(s, "≅ {n}");
        }
        s + &m.to_string()
    }

    fn ext(
        &self,
        x: &Representation,
        y: &Representation,
        cfg: &SearchConfig,
    ) -> CliResult<(i32, String)> {
        let basis = homology::ext1_basis(x, y)?;
        let mut classes = Vec::new();
        for class in &basis {
            let seq = homology::extension_from_class(x, y, class)?;
            let d = decomp::decompose(seq.middle(), cfg)?;
            classes.push(json!({
                "middle": seq.middle().dims(),
                "exact": seq.is_exact(),
                "splits": seq.splits(),
                "summands": self.names.summands(&d).iter().map(summary_json).collect::<Vec<_>>(),
            }));
        }
        if self.json {
            return Ok((
                0,
                pretty(&json!({"dimension": basis.len(), "classes": classes})),
            ));
        }
        let mut s = format!("dim Ext^1 = {}\n", basis.len());
        for (k, c) in classes.iter().enumerate() {
            let _ = writeln!(
                s,
                "class {}: middle {} exact {} splits {} summands {}",
                k + 1,
                c["middle"],
                c["exact"],
                c["splits"],
                summands_text(&c["summands"])
            );
        }
        Ok((0, s))
    }

    fn decompose(&self, m: &Representation, cfg: &SearchConfig) -> CliResult<(i32, String)> {
        let d = decomp::decompose(m, cfg)?;
        let parts: Vec<Value> = d
            .summands
            .iter()
            .map(|s| {
                json!({
                    "name": self.names.name_of(&s.module),
                    "dims": s.module.dims(),
                    "multiplicity": s.multiplicity,
                    "projective": homology::is_projective(&s.module),
                    "injective": homology::is_injective(&s.module),
                })
            })
            .collect();
        if self.json {
            return Ok((
                0,
                pretty(&json!({
                    "dims": m.dims(),
                    "indecomposable": d.total_summands() == 1,
                    "summands": parts,
                })),
            ));
        }
        let mut s = format!(
            "dims {:?}, {} indecomposable summands\n",
            m.dims(),
            d.total_summands()
        );
        for p in &parts {
            let _ = writeln!(
                s,
                "  {} x {}{}{}{}",
                p["multiplicity"],
                p["dims"],
                p["name"]
                    .as_str()
                    .map(|n| format!(" {n}"))
                    .unwrap_or_default(),
                if p["projective"] == true {
                    " projective"
                } else {
                    ""
                },
                if p["injective"] == true {
                    " injective"
                } else {
                    ""
                },
            );
        }
        Ok((0, s))
    }

    fn nth_syzygy(
        &self,
        m: &Representation,
        n: usize,
        cfg: &SearchConfig,
    ) -> CliResult<(i32, String)> {
        let c = homology::is_nth_syzygy(m, n, cfg)?;
        let witness: Vec<Value> = self
            .names
            .summands(&c.witness)
            .iter()
            .map(summary_json)
            .collect();
        let missing: Vec<Value> = c
            .missing
            .iter()
            .map(|x| summary_json(&self.names.summary(x)))
            .collect();
        let v = json!({
            "holds": c.holds,
            "n": n,
            "cosyzygy": c.cosyzygy.dims(),
            "witness": {"dims": c.witness.module().dims(), "summands": witness},
            "missing": missing,
        });
        let code = if c.holds { 0 } else { 1 };
        if self.json {
            return Ok((code, pretty(&v)));
        }
        Ok((
            code,
            format!(
                "{}-th syzygy: {}\ncosyzygy dims {}\nT = Ω^{n}Ω^-{n} dims {} summands {}\nmissing {}\n",
                n,
                c.holds,
                v["cosyzygy"],
                v["witness"]["dims"],
                summands_text(&v["witness"]["summands"]),
                summands_text(&v["missing"]),
            ),
        ))
    }

    fn tau_omega(
        &self,
        m: &Representation,
        i: usize,
        cfg: &SearchConfig,
    ) -> CliResult<(i32, String)> {
        let mem = homology::in_tau_omega(m, i, cfg)?;
        let parts: Vec<Value> = mem
            .summands
            .iter()
            .map(|s| {
                json!({
                    "name": self.names.name_of(&s.module),
                    "dims": s.module.dims(),
                    "multiplicity": s.multiplicity,
                    "injective": s.injective,
                    "tau_inverse": s.tau_inverse.as_ref().map(|t| t.dims().to_vec()),
                    "holds": s.holds,
                })
            })
            .collect();
        let code = if mem.holds { 0 } else { 1 };
        if self.json {
            return Ok((
                code,
                pretty(&json!({"holds": mem.holds, "i": i, "summands": parts})),
            ));
        }
        let mut s = format!("in tau(Omega^{i}(mod A)): {}\n", mem.holds);
        for p in &parts {
            let _ = writeln!(
                s,
                "  {} x {}{} injective {} tau^-1 {} holds {}",
                p["multiplicity"],
                p["dims"],
                p["name"]
                    .as_str()
                    .map(|n| format!(" {n}"))
                    .unwrap_or_default(),
                p["injective"],
                p["tau_inverse"],
                p["holds"],
            );
        }
        Ok((code, s))
    }
}

fn summands_text(v: &Value) -> String {
    let parts: Vec<String> = v
        .as_array()
        .map(|a| {
            a.iter()
                .map(|s| {
                    let summary: ModuleSummary = ModuleSummary {
                        name: s["name"].as_str().map(str::to_string),
                        dims: serde_json::from_value(s["dims"].clone()).unwrap_or_default(),
                    };
                    summary.label()
                })
                .collect()
        })
        .unwrap_or_default();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("arquiver").chain(args.iter().copied()))
    }

    #[test]
    fn info_describes_the_default_algebra() {
        let o = go(&["info"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("dimension 7"), "{}", o.stdout);
        assert!(o.stdout.contains("basis e1 e2 x y z x^2 z*y"));
        let v: Value = serde_json::from_str(&go(&["info", "--json"]).stdout).unwrap();
        assert_eq!(v["dimension"], 7);
        assert_eq!(
            v["indecomposable_projectives"][0]["projective"],
            json!([3, 1])
        );
    }

    #[test]
    fn predicates_exit_by_truth_value() {
        assert_eq!(go(&["is-nth-syzygy", "quot(x^2, e2)", "2"]).code, 1);
        assert_eq!(go(&["is-nth-syzygy", "S(1)", "2"]).code, 0);
        assert_eq!(go(&["in-tau-omega", "quot(x + y + z)", "2"]).code, 1);
        assert_eq!(go(&["in-tau-omega", "quot(x + z)", "2"]).code, 0);
    }

    #[test]
    fn input_errors_exit_2_with_positions() {
        let o = go(&["eval", "P(7)"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("<expr>:1:3:"), "{}", o.stderr);
        assert_eq!(go(&["eval"]).code, 2);
        assert_eq!(go(&["info", "--field", "4"]).code, 2);
        assert_eq!(go(&["in-tau-omega", "S(1)", "0"]).code, 2);
        assert_eq!(go(&["--algebra", "/nonexistent/file", "info"]).code, 2);
    }

    #[test]
    fn ext_reports_the_nonsplit_class() {
        let v: Value =
            serde_json::from_str(&go(&["ext", "qsoc(P(2))", "quot(x + z)", "--json"]).stdout)
                .unwrap();
        assert_eq!(v["dimension"], 1);
        assert_eq!(v["classes"][0]["middle"], json!([3, 3]));
        assert_eq!(v["classes"][0]["splits"], false);
    }
}
