use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use grasspolar::casebook::{case_setup, hull_suite, klein_projection_suite, nucleus_suite, run_case, CaseName, Report};
use grasspolar::embeddings::{hull, Geometry, PointEmbedding, DEFAULT_HULL_CAP};
use grasspolar::forms::parse_form;
use grasspolar::varieties::{build_variety, emit_equations, tangent_space, EquationKind};
use grasspolar::{Field, PolarForm, WedgePoint};

/// Exact computations on line-Grassmann varieties of polar spaces.
#[derive(Debug, Parser)]
#[command(name = "grasspolar", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run one worked case and print its claims table.
    Case {
        name: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        json: bool,
    },
    /// List the points of the variety of totally isotropic or singular lines.
    Enum {
        #[command(flatten)]
        src: FormSource,
    },
    /// Vector dimension of the span of the variety.
    Span {
        #[command(flatten)]
        src: FormSource,
    },
    /// Tangent space of the variety at a point given in Plücker coordinates.
    Tangent {
        #[command(flatten)]
        src: FormSource,
        /// Comma-separated coordinates in lex order x_1_2, x_1_3, ...
        #[arg(long)]
        point: Option<String>,
    },
    /// Emit a defining system of equations.
    Equations {
        #[command(flatten)]
        src: FormSource,
        /// grassmann, variety, raw, radical-star or tangent
        #[arg(long, default_value = "variety")]
        which: String,
        #[arg(long)]
        point: Option<String>,
    },
    /// Vector dimension of the hull of an embedding.
    Hull {
        #[arg(long)]
        geometry: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
        /// Defaults to the `# field` header of the embedding file.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = DEFAULT_HULL_CAP)]
        cap: usize,
    },
    /// Run every case and suite at small field orders.
    Selftest {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        verbose: bool,
    },
}

/// A form given either as a worked case or as a field plus a form file.
#[derive(Debug, Args)]
struct FormSource {
    #[arg(long, conflicts_with_all = ["field", "form"])]
    case: Option<String>,
    #[arg(long, requires = "case")]
    q: Option<u32>,
    #[arg(long, requires = "form")]
    field: Option<String>,
    #[arg(long, requires = "field")]
    form: Option<PathBuf>,
}

struct Loaded {
    field: Field,
    form: PolarForm,
    point: Option<WedgePoint>,
}

impl FormSource {
    fn load(&self) -> Result<Loaded> {
        if let Some(name) = &self.case {
            let name: CaseName = name.parse()?;
            let q = self.q.ok_or_else(|| anyhow!("--case needs --q"))?;
            let s = case_setup(name, q)?;
            return Ok(Loaded { field: s.field, form: s.form, point: Some(s.point) });
        }
        let (Some(spec), Some(path)) = (&self.field, &self.form) else {
            bail!("give either --case NAME --q Q or --field SPEC --form FILE");
        };
        let field = Field::parse_spec(spec)?;
        let form = parse_form(&field, &read(path)?)?;
        Ok(Loaded { field, form, point: None })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_point(ld: &Loaded, point: &Option<String>) -> Result<WedgePoint> {
    match point {
        Some(t) => Ok(WedgePoint::parse(&ld.field, t)?),
        None => ld.point.clone().ok_or_else(|| anyhow!("--point is required with --field/--form")),
    }
}

fn print_report(r: &Report, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(r)?);
    } else {
        print!("{}", r.to_text());
    }
    Ok(())
}

fn selftest_reports() -> Result<Vec<Report>> {
    let plan: [(CaseName, &[u32]); 6] = [
        (CaseName::Symplectic, &[2, 3, 4, 5]),
        (CaseName::Parabolic, &[2, 3, 4, 5]),
        (CaseName::HermitianSurface, &[2, 3]),
        (CaseName::Elliptic, &[2, 3]),
        (CaseName::H4, &[2]),
        (CaseName::DualGrid, &[2, 3, 4, 5]),
    ];
    let mut out = Vec::new();
    for (name, qs) in plan {
        for &q in qs {
            out.push(run_case(name, q)?);
        }
    }
    for q in [2, 3, 4, 5] {
        out.push(klein_projection_suite(q)?);
    }
    out.push(nucleus_suite()?);
    out.push(hull_suite(4, Some(14))?);
    out.push(hull_suite(5, Some(10))?);
    Ok(out)
}

/// Returns whether every expectation held.
fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Case { name, q, json } => {
            let r = run_case(name.parse()?, q)?;
            print_report(&r, json)?;
            Ok(r.pass)
        }
        Cmd::Enum { src } => {
            let ld = src.load()?;
            let v = build_variety(&ld.form)?;
            println!("# {} points", v.len());
            for w in &v.points {
                println!("{}", w.to_text(&ld.field));
            }
            Ok(true)
        }
        Cmd::Span { src } => {
            let ld = src.load()?;
            let v = build_variety(&ld.form)?;
            println!("points {}", v.len());
            println!("span_dim {}", v.span_dimension());
            println!("ambient_dim {}", ld.form.n() * (ld.form.n() - 1) / 2);
            Ok(true)
        }
        Cmd::Tangent { src, point } => {
            let ld = src.load()?;
            let w = parse_point(&ld, &point)?;
            let t = tangent_space(&ld.form, &w)?;
            println!("point {}", w.to_text(&ld.field));
            println!("rank {}", t.rank);
            println!("dim {}", t.dim());
            print!("{}", emit_equations(&ld.form, &EquationKind::Tangent(w))?.to_text());
            Ok(true)
        }
        Cmd::Equations { src, which, point } => {
            let ld = src.load()?;
            let kind = match which.as_str() {
                "grassmann" => EquationKind::Grassmann,
                "variety" => EquationKind::Variety,
                "raw" => EquationKind::Raw,
                "radical-star" => EquationKind::RadicalStar,
                "tangent" => EquationKind::Tangent(parse_point(&ld, &point)?),
                other => bail!("unknown equation kind `{other}`"),
            };
            print!("{}", emit_equations(&ld.form, &kind)?.to_text());
            Ok(true)
        }
        Cmd::Hull { geometry, embedding, field, cap } => {
            let geom = Geometry::parse(&read(&geometry)?)?;
            let text = read(&embedding)?;
            let spec = match field {
                Some(s) => s,
                None => text
                    .lines()
                    .find_map(|l| l.trim().strip_prefix("# field ").map(|s| s.trim().to_string()))
                    .ok_or_else(|| anyhow!("embedding file has no `# field` header; pass --field"))?,
            };
            let field = Field::parse_spec(&spec)?;
            let emb = PointEmbedding::parse(&field, &geom, &text)?;
            let h = hull(&geom, &emb, cap)?;
            println!("embedding_dim {}", emb.span().dim());
            println!("hull_dim {}", h.dim);
            Ok(true)
        }
        Cmd::Selftest { json, verbose } => {
            let reports = selftest_reports()?;
            if json {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            } else {
                for r in &reports {
                    if verbose || !r.pass {
                        print!("{}", r.to_text());
                    }
                    println!("{} {} q={}", if r.pass { "ok  " } else { "FAIL" }, r.title, r.q);
                }
            }
            let pass = reports.iter().all(|r| r.pass);
            eprintln!("{} of {} reports hold", reports.iter().filter(|r| r.pass).count(), reports.len());
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
