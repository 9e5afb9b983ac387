use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use monideal::families::{self, VeroneseSpec};
use monideal::linalg::Characteristic;
use monideal::linearity::{self, BettiOptions, DEFAULT_CELL_CAP, DEFAULT_NODE_BUDGET};
use monideal::packing::{self, DEFAULT_PACKED_MAX_N};
use monideal::rees;
use monideal::sweep::{self, Family, SweepOptions};
use monideal::symbolic::{self, SymbolicOptions};
use monideal::toric::{self, DEFAULT_PAIR_CAP};
use monideal::{format, primes, MonomialIdeal};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "monideal", version, about = "Symbolic powers, regularity and Rees algebras of monomial ideals")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coefficient field characteristic for homology (0 for the rationals).
    #[arg(long = "char", global = true, default_value_t = 32003)]
    characteristic: u32,
    /// Largest order of symbolic power or cover to compute.
    #[arg(long, global = true, default_value_t = 3)]
    kmax: u32,
    /// Compute symbolic powers straight from the definition.
    #[arg(long, global = true)]
    naive: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_CELL_CAP)]
    cell_cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct IdealArg {
    /// Ideal as inline text (`x1*x2, x3^2`), inline JSON, or a path to a file holding either.
    #[arg(long)]
    ideal: String,
    /// Number of variables; defaults to the largest index that occurs.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructFamily {
    Veronese,
    VeroneseType,
    Borel,
    Transversal,
    Matching,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Polymatroidal,
    Matroidal,
    StrongExchange,
    VertexSplittable,
    LinearQuotients,
    Cwl,
    Cwp,
    Koenig,
    Packed,
    MinimalIntersectionType,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFamily {
    Matroidal,
    Polymatroidal,
}

#[derive(Subcommand)]
enum Command {
    /// Build an ideal from a named family.
    Construct {
        #[arg(long, value_enum)]
        family: ConstructFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: Option<u32>,
        /// Exponent caps for veronese-type, comma separated.
        #[arg(long, value_delimiter = ',')]
        caps: Vec<u32>,
        /// 1-based variable indices for borel, comma separated.
        #[arg(long, value_delimiter = ',')]
        indices: Vec<usize>,
        /// 1-based supports separated by `;`, e.g. `1,2;2,3`.
        #[arg(long)]
        supports: Option<String>,
    },
    SymbolicPower {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long)]
        k: u32,
        /// Print degrees and comparison data along with the generators.
        #[arg(long)]
        report: bool,
    },
    /// Whether I^(k) = I^k for k up to --kmax.
    ComparePowers {
        #[command(flatten)]
        input: IdealArg,
    },
    /// Associated primes.
    Ass {
        #[command(flatten)]
        input: IdealArg,
    },
    /// Irredundant irreducible decomposition.
    Decompose {
        #[command(flatten)]
        input: IdealArg,
    },
    Height {
        #[command(flatten)]
        input: IdealArg,
    },
    /// Graded Betti table.
    Betti {
        #[command(flatten)]
        input: IdealArg,
    },
    Regularity {
        #[command(flatten)]
        input: IdealArg,
        /// Use a linear-quotients witness instead of homology when one exists.
        #[arg(long)]
        shortcut: bool,
    },
    Check {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Generators u t^q of the symbolic Rees algebra with q up to --kmax.
    ReesGenerators {
        #[command(flatten)]
        input: IdealArg,
    },
    DOfK {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long)]
        k: u32,
    },
    /// Fit |a| = c k + d over the indecomposable covers.
    CoverFunction {
        #[command(flatten)]
        input: IdealArg,
    },
    /// Reduced Groebner basis of the defining ideal of the symbolic Rees algebra.
    ToricGroebner {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long)]
        x_condition: bool,
        /// Count basis elements by degree.
        #[arg(long)]
        report_degrees: bool,
        /// Compute the basis by eliminating t instead of by saturation.
        #[arg(long)]
        elimination: bool,
        #[arg(long, default_value_t = DEFAULT_PAIR_CAP)]
        pair_cap: u64,
    },
    /// Packed, disjoint product form and coincidence of powers for every matroidal ideal.
    PackingTheoremSweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check equality of regularities and componentwise linearity of symbolic powers.
    VerifyConjectures {
        #[arg(long, value_enum, conflicts_with = "ideal")]
        family: Option<SweepFamily>,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 4)]
        exponent_cap: u32,
        /// Record wall-clock time per instance.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read_ideal(text: &str, n: Option<usize>) -> Result<MonomialIdeal> {
    let path = Path::new(text);
    let source = if path.is_file() {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    } else {
        text.to_string()
    };
    Ok(format::parse_any(&source, n)?)
}

fn load(input: &IdealArg) -> Result<MonomialIdeal> {
    read_ideal(&input.ideal, input.n)
}

fn ideal_json(i: &MonomialIdeal) -> Value {
    serde_json::to_value(i).expect("ideal serializes")
}

fn parse_supports(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split(';')
        .map(|block| {
            block
                .split(',')
                .map(|v| {
                    let v: usize = v.trim().parse().with_context(|| format!("bad index in {block:?}"))?;
                    v.checked_sub(1).ok_or_else(|| anyhow!("indices are 1-based"))
                })
                .collect()
        })
        .collect()
}

struct Ctx {
    betti: BettiOptions,
    symbolic: SymbolicOptions,
    kmax: u32,
    node_budget: u64,
    format: Option<OutputFormat>,
}

impl Ctx {
    fn new(g: &Global) -> Result<Self> {
        if g.kmax == 0 {
            bail!("--kmax must be positive");
        }
        Ok(Ctx {
            betti: BettiOptions { characteristic: Characteristic::from_u32(g.characteristic)?, cell_cap: g.cell_cap },
            symbolic: SymbolicOptions { naive: g.naive },
            kmax: g.kmax,
            node_budget: g.node_budget,
            format: g.format,
        })
    }

    fn json_only(&self) -> Result<()> {
        if self.format == Some(OutputFormat::Csv) {
            bail!("this command only writes JSON");
        }
        Ok(())
    }
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(io::BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("json"));
}

fn check(ctx: &Ctx, i: &MonomialIdeal, property: Property) -> Result<Value> {
    let holds = match property {
        Property::Polymatroidal => families::is_polymatroidal(i),
        Property::Matroidal => families::is_matroidal(i),
        Property::StrongExchange => families::has_strong_exchange(i)?,
        Property::VertexSplittable => families::is_vertex_splittable(i),
        Property::LinearQuotients => {
            let found = linearity::linear_quotients_order(i, None, ctx.node_budget)?;
            let order = found.as_ref().map(|o| o.order.iter().map(|m| m.to_string()).collect::<Vec<_>>());
            return Ok(json!({ "property": "linear-quotients", "holds": found.is_some(), "order": order }));
        }
        Property::Cwl => linearity::is_componentwise_linear(i, ctx.betti)?,
        Property::Cwp => linearity::is_componentwise_polymatroidal(i)?,
        Property::Koenig => packing::is_koenig(i)?,
        Property::Packed => packing::is_packed(i, DEFAULT_PACKED_MAX_N)?,
        Property::MinimalIntersectionType => primes::is_minimal_intersection_type(i)?.is_some(),
    };
    let name = property.to_possible_value().expect("named").get_name().to_string();
    Ok(json!({ "property": name, "holds": holds }))
}

fn rees_json(r: &rees::ReesGenerators) -> Value {
    let gens: Vec<Value> = r.gens.iter().map(|(u, q)| json!({ "a": u.exps(), "q": q })).collect();
    json!({ "k_max": r.k_max, "stable": r.stable, "gens": gens })
}

fn run(cli: Cli) -> Result<i32> {
    let ctx = Ctx::new(&cli.global)?;
    match cli.command {
        Command::Construct { family, n, d, caps, indices, supports } => {
            ctx.json_only()?;
            let need_d = || d.ok_or_else(|| anyhow!("--d is required for this family"));
            let need_supports = || -> Result<Vec<Vec<usize>>> {
                parse_supports(supports.as_deref().ok_or_else(|| anyhow!("--supports is required for this family"))?)
            };
            let ideal = match family {
                ConstructFamily::Veronese => families::veronese(n, need_d()?),
                ConstructFamily::VeroneseType => families::veronese_type(&VeroneseSpec { n, d: need_d()?, caps })?,
                ConstructFamily::Borel => {
                    let idx = indices
                        .iter()
                        .map(|&i| i.checked_sub(1).ok_or_else(|| anyhow!("indices are 1-based")))
                        .collect::<Result<Vec<_>>>()?;
                    families::principal_borel(n, &idx)?
                }
                ConstructFamily::Transversal => families::transversal(n, &need_supports()?)?,
                ConstructFamily::Matching => families::matching_matroidal(n, &need_supports()?)?,
            };
            print_json(&ideal_json(&ideal));
        }
        Command::SymbolicPower { input, k, report } => {
            ctx.json_only()?;
            let i = load(&input)?;
            if report {
                let r = symbolic::symbolic_power_report(&i, k, ctx.symbolic)?;
                print_json(&serde_json::to_value(&r)?);
            } else {
                print_json(&ideal_json(&symbolic::symbolic_power_with(&i, k, ctx.symbolic)?));
            }
        }
        Command::ComparePowers { input } => {
            let i = load(&input)?;
            let rows = symbolic::powers_coincide_with(&i, ctx.kmax, ctx.symbolic)?;
            if ctx.format == Some(OutputFormat::Csv) {
                let mut w = csv::Writer::from_writer(io::stdout().lock());
                w.write_record(["k", "equal"])?;
                for (k, eq) in rows {
                    w.write_record([k.to_string(), eq.to_string()])?;
                }
                w.flush()?;
            } else {
                let rows: Vec<Value> = rows.iter().map(|(k, eq)| json!({ "k": k, "equal": eq })).collect();
                print_json(&json!({ "ideal": i.to_string(), "k_max": ctx.kmax, "powers": rows }));
            }
        }
        Command::Ass { input } => {
            ctx.json_only()?;
            let primes: Vec<Value> =
                primes::associated_primes(&load(&input)?)?.iter().map(|p| ideal_json(&p.ideal())).collect();
            print_json(&Value::Array(primes));
        }
        Command::Decompose { input } => {
            ctx.json_only()?;
            let comps: Vec<Value> =
                primes::irreducible_decomposition(&load(&input)?)?.iter().map(|c| ideal_json(&c.ideal())).collect();
            print_json(&Value::Array(comps));
        }
        Command::Height { input } => {
            ctx.json_only()?;
            print_json(&json!({ "height": primes::height(&load(&input)?)? }));
        }
        Command::Betti { input } => {
            let table = linearity::betti_table(&load(&input)?, ctx.betti)?;
            if ctx.format == Some(OutputFormat::Csv) {
                let mut w = csv::Writer::from_writer(io::stdout().lock());
                w.write_record(["i", "j", "beta"])?;
                for ((i, j), b) in table.coarse() {
                    w.write_record([i.to_string(), j.to_string(), b.to_string()])?;
                }
                w.flush()?;
            } else {
                print_json(&table.to_json());
            }
        }
        Command::Regularity { input, shortcut } => {
            ctx.json_only()?;
            let r = linearity::regularity(&load(&input)?, ctx.betti, shortcut, ctx.node_budget)?;
            print_json(&serde_json::to_value(r)?);
        }
        Command::Check { input, property } => {
            ctx.json_only()?;
            print_json(&check(&ctx, &load(&input)?, property)?);
        }
        Command::ReesGenerators { input } => {
            ctx.json_only()?;
            print_json(&rees_json(&rees::rees_generators(&load(&input)?, ctx.kmax)?));
        }
        Command::DOfK { input, k } => {
            ctx.json_only()?;
            let value = rees::d_of_k(&load(&input)?, k, ctx.kmax.max(k))?;
            print_json(&json!({ "k": k, "d": value }));
        }
        Command::CoverFunction { input } => {
            ctx.json_only()?;
            let fit = rees::linear_cover_function(&load(&input)?, ctx.kmax)?;
            let v = match fit {
                Some((c, d)) => json!({ "k_max": ctx.kmax, "linear": true, "c": c, "d": d }),
                None => json!({ "k_max": ctx.kmax, "linear": false }),
            };
            print_json(&v);
        }
        Command::ToricGroebner { input, x_condition, report_degrees, elimination, pair_cap } => {
            ctx.json_only()?;
            let i = load(&input)?;
            let gens = rees::rees_generators(&i, ctx.kmax)?;
            let basis = if elimination {
                toric::toric_groebner_by_elimination(&gens.gens, pair_cap)?
            } else {
                toric::toric_groebner(&gens.gens, pair_cap)?
            };
            let ini = toric::initial_ideal(i.n(), gens.gens.len(), &basis)?;
            let initial = toric::initial_generators(i.n(), &ini);
            let mut out = json!({
                "rees": rees_json(&gens),
                "basis": basis,
                "initial": initial,
            });
            if x_condition {
                let verdict = if !gens.stable {
                    toric::XCondition::Incomplete
                } else {
                    match initial.iter().find(|g| g.x_degree() > 1) {
                        Some(w) => toric::XCondition::Fails(w.clone()),
                        None => toric::XCondition::Holds,
                    }
                };
                out["x_condition"] = serde_json::to_value(verdict)?;
            }
            if report_degrees {
                out["degrees"] = serde_json::to_value(toric::degree_profile(&basis))?;
            }
            print_json(&out);
        }
        Command::PackingTheoremSweep { n, output } => {
            let rows = sweep::packing_sweep(n)?;
            let mut out = sink(&output)?;
            if ctx.format == Some(OutputFormat::Json) {
                for r in &rows {
                    writeln!(out, "{}", serde_json::to_string(r)?)?;
                }
            } else {
                let mut w = csv::Writer::from_writer(&mut out);
                for r in &rows {
                    w.serialize(r)?;
                }
                w.flush()?;
            }
            out.flush()?;
            return Ok(if rows.iter().all(|r| r.agrees()) { 0 } else { 1 });
        }
        Command::VerifyConjectures { family, ideal, n, max_n, max_degree, exponent_cap, timing, output } => {
            ctx.json_only()?;
            let opts = SweepOptions {
                k_max: ctx.kmax,
                betti: ctx.betti,
                node_budget: ctx.node_budget,
                symbolic: ctx.symbolic,
                timing,
            };
            let (selector, reports) = match (family, ideal) {
                (_, Some(text)) => {
                    let i = read_ideal(&text, n)?;
                    let label = i.to_string();
                    (json!({ "ideal": label }), vec![sweep::verify_ideal(&label, &i, &opts)])
                }
                (Some(SweepFamily::Matroidal), None) => {
                    let f = Family::Matroidal { max_n };
                    (serde_json::to_value(&f)?, sweep::verify_conjectures(&f, &opts)?)
                }
                (Some(SweepFamily::Polymatroidal), None) => {
                    let f = Family::Polymatroidal { max_n, max_degree, exponent_cap };
                    (serde_json::to_value(&f)?, sweep::verify_conjectures(&f, &opts)?)
                }
                (None, None) => bail!("give --family or --ideal"),
            };
            let header = json!({
                "header": {
                    "version": env!("CARGO_PKG_VERSION"),
                    "selector": selector,
                    "k_max": ctx.kmax,
                    "characteristic": ctx.betti.characteristic.as_u32(),
                    "cell_cap": ctx.betti.cell_cap,
                    "node_budget": ctx.node_budget,
                    "naive": ctx.symbolic.naive,
                    "instances": reports.len(),
                }
            });
            let mut out = sink(&output)?;
            writeln!(out, "{}", serde_json::to_string(&header)?)?;
            for r in &reports {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
            out.flush()?;
            return Ok(sweep::exit_code(&reports));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            let resource = matches!(e.downcast_ref::<monideal::Error>(), Some(monideal::Error::Resource(_)));
            ExitCode::from(if resource { 2 } else { 3 })
        }
    }
}
