use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ped_core::bounds::{self, PartitionCertificate};
use ped_core::constructions::{self, Layout};
use ped_core::crossings::{enumerate_crossings, CrossingMethod};
use ped_core::io::{parse_graph, parse_stubs, write_graph, write_stubs};
use ped_core::maxsped::{solve_01_maxsped, solve_maxsped, SpedSolution};
use ped_core::minsped::{
    approx_minw2sat, assignment_to_stubs, build_instance, exact_minw2sat, WeightMode,
};
use ped_core::number::{format_float, format_rational, parse_rational, Approx, Quantity, RootSum};
use ped_core::random::{Planarity, RandomDrawing};
use ped_core::render::{render_svg, RenderStyle};
use ped_core::validate::{ink, max_uniform_delta, validate_ped, validate_ped_approx, Validation};
use ped_core::{Error, GeometricGraph, StubAssignment};

#[derive(Parser)]
#[command(name = "ped", version, about = "Symmetric partial edge drawings")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a drawing (and optionally its homogeneous stubs).
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// List all edge crossings.
    Crossings {
        graph: PathBuf,
        /// Use the x-interval sweep instead of all pairs.
        #[arg(long)]
        sweep: bool,
    },
    /// Check that no two stubs share a point.
    Validate {
        graph: PathBuf,
        stubs: PathBuf,
        /// Compare with a float tolerance instead of exactly.
        #[arg(long)]
        float: bool,
    },
    /// Maximum-ink symmetric drawing of a 2-planar drawing.
    Maxsped {
        graph: PathBuf,
        /// Keep or erase whole edges.
        #[arg(long)]
        zero_one: bool,
        /// Compare ink exactly instead of in floating point.
        #[arg(long)]
        exact: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Approximately minimal erasure of any drawing.
    Minsped {
        graph: PathBuf,
        /// Weigh erased length relative to the edge length.
        #[arg(long)]
        relative: bool,
        /// Solve the erasure problem exhaustively instead.
        #[arg(long)]
        exact_oracle: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Largest uniform stub ratio without stub crossings.
    Maxdelta { graph: PathBuf },
    /// Cell capacities behind the upper bound for complete graphs.
    Bounds {
        /// Abscissa of the apex point, in (0, 1/2].
        #[arg(long, default_value = "1/2")]
        t: String,
        #[arg(long)]
        json: bool,
    },
    /// Draw a drawing and its stubs as SVG.
    Render {
        graph: PathBuf,
        stubs: Option<PathBuf>,
        /// Draw full edges faintly underneath the stubs.
        #[arg(long)]
        ghost: bool,
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LayoutOutput {
    /// Graph file; standard output if absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the homogeneous stub assignment here.
    #[arg(long)]
    stubs: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// Complete bipartite graph K_{n,n}.
    Knn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/4")]
        delta: String,
        #[command(flatten)]
        out: LayoutOutput,
    },
    /// Complete bipartite graph K_{k,n} with the k side on a vertical line.
    K2kn {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/4")]
        delta: String,
        #[command(flatten)]
        out: LayoutOutput,
    },
    /// All edges spanning at most k positions on n vertices.
    Bandwidth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: LayoutOutput,
    },
    /// k-circulant graph on n vertices; k must be a square.
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: LayoutOutput,
    },
    /// Random integer segments in general position.
    Random {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        span: Option<i64>,
        #[arg(long, default_value_t = 12)]
        max_offset: i64,
        /// Allow more than two crossings per edge.
        #[arg(long)]
        unrestricted: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    /// Malformed or unsupported input; exit code 2.
    Input(String),
    /// A drawing failed validation; exit code 1.
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn load_graph(path: &Path) -> Result<GeometricGraph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn rational_arg(s: &str) -> Result<num_rational::BigRational, Failure> {
    Ok(parse_rational(s)?)
}

fn describe(v: &Validation) -> String {
    let mut lines = vec![format!("INVALID: {} stub conflicts", v.violations.len())];
    for x in v.violations.iter().take(20) {
        lines.push(format!(
            "  edges {} and {} (stubs at vertices {} and {}) meet at {}",
            x.edges.0, x.edges.1, x.origins.0, x.origins.1, x.witness
        ));
    }
    lines.join("\n")
}

/// Refuses to emit an assignment that does not validate.
fn checked(g: &GeometricGraph, s: &StubAssignment, exact: bool) -> CliResult {
    let v = if exact {
        validate_ped(g, s)?
    } else {
        validate_ped_approx(g, s)?
    };
    if v.is_valid() {
        Ok(())
    } else {
        Err(Failure::Invalid(describe(&v)))
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Generate { family } => generate(family, cli.seed),
        Command::Crossings { graph, sweep } => {
            let g = load_graph(&graph)?;
            let method = if sweep {
                CrossingMethod::Sweep
            } else {
                CrossingMethod::AllPairs
            };
            let crossings = enumerate_crossings(&g, method)?;
            let mut out = format!("crossings {}\n", crossings.len());
            for c in &crossings {
                out.push_str(&format!(
                    "{} {} {} {} {}\n",
                    c.first,
                    c.second,
                    c.point,
                    format_rational(&c.near_fraction(c.first)),
                    format_rational(&c.near_fraction(c.second)),
                ));
            }
            write_to(None, &out)
        }
        Command::Validate {
            graph,
            stubs,
            float,
        } => {
            let g = load_graph(&graph)?;
            let s = parse_stubs(&read(&stubs)?, g.edge_count())?;
            let v = if float {
                validate_ped_approx(&g, &s)?
            } else {
                validate_ped(&g, &s)?
            };
            for w in &v.warnings {
                eprintln!("warning: {w:?}");
            }
            if !v.is_valid() {
                return Err(Failure::Invalid(describe(&v)));
            }
            let i = ink(&g, &s);
            println!("VALID");
            println!(
                "ink {} relative {}",
                format_float(i.absolute),
                format_float(i.relative)
            );
            Ok(())
        }
        Command::Maxsped {
            graph,
            zero_one,
            exact,
            output,
        } => {
            let g = load_graph(&graph)?;
            let (ink_text, assignment) = if exact {
                let sol: SpedSolution<RootSum> = if zero_one {
                    solve_01_maxsped(&g)?
                } else {
                    solve_maxsped(&g)?
                };
                (
                    format!("{} ~ {}", sol.ink, format_float(sol.ink.as_f64())),
                    sol.assignment,
                )
            } else {
                let sol: SpedSolution<Approx> = if zero_one {
                    solve_01_maxsped(&g)?
                } else {
                    solve_maxsped(&g)?
                };
                (format_float(sol.ink.as_f64()), sol.assignment)
            };
            checked(&g, &assignment, true)?;
            println!("ink {ink_text}");
            println!("total {}", format_float(g.total_length::<Approx>().0));
            if let Some(p) = output {
                write_to(Some(&p), &write_stubs(&assignment))?;
            }
            Ok(())
        }
        Command::Minsped {
            graph,
            relative,
            exact_oracle,
            output,
        } => {
            let g = load_graph(&graph)?;
            let mode = if relative {
                WeightMode::Relative
            } else {
                WeightMode::Absolute
            };
            let inst = build_instance::<Approx>(&g, mode)?;
            let solution = if exact_oracle {
                exact_minw2sat(&inst)?
            } else {
                approx_minw2sat(&inst)
            };
            let assignment = assignment_to_stubs(&inst, &solution)?;
            checked(&g, &assignment, true)?;
            let i = ink(&g, &assignment);
            println!("variables {}", inst.variable_count());
            println!("erased {}", format_float(solution.weight.as_f64()));
            println!(
                "ink {} relative {}",
                format_float(i.absolute),
                format_float(i.relative)
            );
            if let Some(p) = output {
                write_to(Some(&p), &write_stubs(&assignment))?;
            }
            Ok(())
        }
        Command::Maxdelta { graph } => {
            let g = load_graph(&graph)?;
            let delta = max_uniform_delta(&g)?;
            println!(
                "{} ~ {}",
                format_rational(&delta),
                format_float(ped_core::number::to_f64(&delta))
            );
            Ok(())
        }
        Command::Bounds { t, json } => {
            let t = rational_arg(&t)?;
            let cert = bounds::partition_certificate(&t)?;
            if !cert.corner.holds() {
                return Err(Failure::Invalid(
                    "corner constants fail their checks".into(),
                ));
            }
            let text = if json {
                let mut s = serde_json::to_string_pretty(&bounds_json(&cert))
                    .map_err(|e| Failure::Input(e.to_string()))?;
                s.push('\n');
                s
            } else {
                bounds_table(&cert)
            };
            write_to(None, &text)
        }
        Command::Render {
            graph,
            stubs,
            ghost,
            scale,
            output,
        } => {
            let g = load_graph(&graph)?;
            let s = match stubs {
                Some(p) => Some(parse_stubs(&read(&p)?, g.edge_count())?),
                None => None,
            };
            if scale.is_nan() || scale <= 0.0 {
                return Err(Failure::Input("scale must be positive".into()));
            }
            let style = RenderStyle {
                ghost_edges: ghost,
                scale,
                ..RenderStyle::default()
            };
            write_to(output.as_deref(), &render_svg(&g, s.as_ref(), &style))
        }
    }
}

fn emit_layout(layout: Layout, out: LayoutOutput, exact: bool) -> CliResult {
    let stubs = layout.stubs();
    checked(&layout.graph, &stubs, exact)?;
    write_to(out.output.as_deref(), &write_graph(&layout.graph))?;
    if let Some(p) = out.stubs {
        write_to(Some(&p), &write_stubs(&stubs))?;
    }
    eprintln!("delta {}", format_rational(&layout.delta));
    Ok(())
}

fn generate(family: Family, seed: u64) -> CliResult {
    match family {
        Family::Knn { n, delta, out } => emit_layout(
            constructions::layout_knn(n, &rational_arg(&delta)?)?,
            out,
            true,
        ),
        Family::K2kn { k, n, delta, out } => emit_layout(
            constructions::layout_k2kn(k, n, &rational_arg(&delta)?)?,
            out,
            true,
        ),
        Family::Bandwidth { n, k, out } => {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n.min(u + k + 1)).map(move |v| (u, v)))
                .collect();
            emit_layout(constructions::layout_bandwidth(n, &edges, k)?, out, true)
        }
        Family::Circulant { n, k, out } => {
            emit_layout(constructions::layout_circulant(n, k)?, out, false)
        }
        Family::Random {
            edges,
            span,
            max_offset,
            unrestricted,
            output,
        } => {
            let planarity = if unrestricted {
                Planarity::Unrestricted
            } else {
                Planarity::TwoPlanar
            };
            let mut cfg = RandomDrawing::sparse(edges, planarity);
            cfg.max_offset = max_offset;
            if let Some(s) = span {
                cfg.span = s;
            }
            let g = cfg.generate_seeded(seed)?;
            write_to(output.as_deref(), &write_graph(&g))
        }
    }
}

fn rationals(values: impl IntoIterator<Item = num_rational::BigRational>) -> Vec<String> {
    values.into_iter().map(|r| format_rational(&r)).collect()
}

fn bounds_json(cert: &PartitionCertificate) -> Value {
    let middle: Vec<Value> = cert
        .middle
        .iter()
        .map(|s| {
            json!({
                "index": s.index,
                "lower": format_rational(&s.lower),
                "upper": format_rational(&s.upper),
                "consumption": format_rational(&s.consumption),
                "capacity": s.capacity,
            })
        })
        .collect();
    let forms: Vec<Value> = cert
        .upper
        .lower_forms
        .iter()
        .map(|f| json!([format_rational(&f.slope), format_rational(&f.offset)]))
        .collect();
    let cells: Vec<Value> = cert
        .upper
        .cells()
        .into_iter()
        .map(|(a, b)| json!([format_rational(&a), format_rational(&b)]))
        .collect();
    let checks: Vec<Value> = cert
        .corner
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "value": format_float(c.value),
                "limit": format_float(c.limit),
                "direction": if c.value_exceeds_limit { ">" } else { "<" },
                "holds": c.holds(),
            })
        })
        .collect();
    json!({
        "middle": { "strips": middle, "total": cert.middle_total() },
        "bottom": {
            "boundaries": rationals(cert.bottom.boundaries.iter().cloned()),
            "capacities": cert.bottom.capacities,
            "total": cert.bottom.total(),
        },
        "upper": {
            "t": format_rational(&cert.upper.t),
            "lower_forms": forms,
            "cells": cells,
            "capacities": cert.upper.capacities,
            "total": cert.upper.total(),
        },
        "corner": {
            "growth_factor": format_float(cert.corner.growth_factor),
            "base_ratio": format_rational(&cert.corner.base_ratio),
            "slanted_ratio": format_float(cert.corner.slanted_ratio),
            "base_count_bound": format_float(cert.corner.base_count_bound),
            "slanted_count_bound": format_float(cert.corner.slanted_count_bound),
            "checks": checks,
            "capacity": cert.corner.capacity,
            "squares": cert.corner_count,
        },
        "totals": {
            "square": cert.square_total(),
            "upper_bound": cert.upper_bound(),
            "one_sided": bounds::one_sided_bound(),
            "convex": bounds::convex_bound(),
            "erdos_szekeres_threshold": bounds::erdos_szekeres_threshold().to_string(),
        },
    })
}

fn bounds_table(cert: &PartitionCertificate) -> String {
    let mut out = String::new();
    out.push_str("middle strips\n");
    out.push_str("  i  lower  upper  consumption  capacity\n");
    for s in &cert.middle {
        out.push_str(&format!(
            "  {}  {}  {}  {}  {}\n",
            s.index,
            format_rational(&s.lower),
            format_rational(&s.upper),
            format_rational(&s.consumption),
            s.capacity
        ));
    }
    out.push_str(&format!("  total {}\n", cert.middle_total()));
    out.push_str(&format!(
        "bottom strip\n  boundaries {}\n  capacities {:?}\n  total {}\n",
        rationals(cert.bottom.boundaries.iter().cloned()).join(" "),
        cert.bottom.capacities,
        cert.bottom.total()
    ));
    out.push_str(&format!(
        "upper rectangles (t = {})\n",
        format_rational(&cert.upper.t)
    ));
    for ((form, (a, b)), cap) in cert
        .upper
        .lower_forms
        .iter()
        .zip(cert.upper.cells())
        .zip(&cert.upper.capacities)
    {
        out.push_str(&format!(
            "  [{}, {})  left = {}  capacity {}\n",
            format_rational(&a),
            format_rational(&b),
            form,
            cap
        ));
    }
    out.push_str(&format!("  total {} per side\n", cert.upper.total()));
    out.push_str("corner squares\n");
    for c in &cert.corner.checks {
        out.push_str(&format!(
            "  {}: {} {} {} [{}]\n",
            c.name,
            format_float(c.value),
            if c.value_exceeds_limit { ">" } else { "<" },
            format_float(c.limit),
            if c.holds() { "ok" } else { "FAILS" }
        ));
    }
    out.push_str(&format!(
        "  base tangent ratio {} (count bound {}, not used)\n",
        format_rational(&cert.corner.base_ratio),
        format_float(cert.corner.base_count_bound)
    ));
    out.push_str(&format!(
        "  capacity {} each, {} squares\n",
        cert.corner.capacity, cert.corner_count
    ));
    out.push_str("totals\n");
    out.push_str(&format!("  unit square {}\n", cert.square_total()));
    out.push_str(&format!("  upper bound {}\n", cert.upper_bound()));
    out.push_str(&format!(
        "  one-sided convex {}\n",
        bounds::one_sided_bound()
    ));
    out.push_str(&format!("  convex {}\n", bounds::convex_bound()));
    out.push_str(&format!(
        "  cup-cap threshold {}\n",
        bounds::erdos_szekeres_threshold()
    ));
    out
}
