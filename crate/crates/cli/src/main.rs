//! Command-line front end: approximate and exact shortest paths, obstacle
//! sketches, two-point query preprocessing, instance generation, figures,
//! and a small benchmark harness.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use pathsketch::corridors::approx_shortest_path_simple;
use pathsketch::domain_io::{generate_instance, parse_domain_file, DomainFile, ObstacleShape};
use pathsketch::geom::{Point, PolygonalDomain};
use pathsketch::oracle::exact_shortest_path;
use pathsketch::path::PolyPath;
use pathsketch::pipeline::{approx_shortest_path, approx_shortest_path_convex, PipelineMode};
use pathsketch::query::{preprocess, QueryStructure};
use pathsketch::sketch::{build_sketch, make_params, ParamMode};
use pathsketch::svg::{emit_svg, SvgOverlays};
use pathsketch::Error;

#[derive(Parser)]
#[command(name = "pathsketch", about = "Approximate shortest paths amid polygonal obstacles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Convex,
    Simple,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Convex,
    Simple,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a (1+eps)-approximate shortest path between two points.
    Path {
        #[arg(long)]
        domain: PathBuf,
        /// Source, as "x,y" or a named point from the domain file.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Write a figure with the domain, sketch, and path.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the waypoints and length as JSON.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Build an obstacle sketch and report its statistics.
    Sketch {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        /// Derive parameters for two-point queries instead of single shot.
        #[arg(long)]
        query_mode: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Preprocess a convex domain for two-point distance queries.
    Preprocess {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long, default_value_t = 0.662)]
        eps: f64,
        /// Output file for the query structure.
        #[arg(long)]
        out: PathBuf,
    },
    /// Answer a two-point distance query against a preprocessed structure.
    Query {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Exact shortest path via the visibility-graph baseline.
    Oracle {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Generate a random disjoint-obstacle instance.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of obstacles.
        #[arg(long, default_value_t = 10)]
        h: usize,
        /// Vertices per obstacle.
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Shape::Convex)]
        shape: Shape,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stretch/runtime table over a seed range, CSV to stdout.
    Bench {
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed_start: u64,
        #[arg(long, default_value_t = 10)]
        seed_count: u64,
        #[arg(long, default_value_t = 10)]
        h: usize,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Shape::Convex)]
        shape: Shape,
        /// Query pairs per instance.
        #[arg(long, default_value_t = 5)]
        pairs: usize,
    },
}

fn load_domain(path: &PathBuf) -> Result<(DomainFile, PolygonalDomain), Error> {
    let text = std::fs::read_to_string(path)?;
    let file = parse_domain_file(&text)?;
    let domain = file.to_domain()?;
    Ok((file, domain))
}

/// A point argument: either "x,y" or a named point from the domain file.
fn parse_point(arg: &str, file: Option<&DomainFile>) -> Result<Point, Error> {
    if let Some((x, y)) = arg.split_once(',') {
        if let (Ok(x), Ok(y)) = (x.trim().parse(), y.trim().parse()) {
            return Ok(Point::new(x, y));
        }
    }
    file.and_then(|f| f.point(arg))
        .ok_or_else(|| Error::ParseError(format!("unknown point '{arg}'")))
}

fn route(
    domain: &PolygonalDomain,
    s: Point,
    t: Point,
    eps: f64,
    mode: Mode,
) -> Result<PolyPath, Error> {
    match mode {
        Mode::Auto => approx_shortest_path(domain, s, t, eps, PipelineMode::Auto),
        Mode::Convex => approx_shortest_path_convex(domain, s, t, eps),
        Mode::Simple => approx_shortest_path_simple(domain, s, t, eps),
    }
}

fn waypoints_json(path: &PolyPath) -> serde_json::Value {
    serde_json::json!({
        "length": path.length,
        "waypoints": path.waypoints.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>(),
        "segment_kinds": path.segment_kinds.iter().map(|k| format!("{k:?}")).collect::<Vec<_>>(),
    })
}

fn run() -> Result<(), Error> {
    match Cli::parse().command {
        Command::Path { domain, from, to, eps, mode, svg, json_out } => {
            let (file, dom) = load_domain(&domain)?;
            let s = parse_point(&from, Some(&file))?;
            let t = parse_point(&to, Some(&file))?;
            let path = route(&dom, s, t, eps, mode)?;
            println!("length {:.9}", path.length);
            for p in &path.waypoints {
                println!("  {:.9} {:.9}", p.x, p.y);
            }
            if let Some(out) = json_out {
                std::fs::write(out, serde_json::to_string_pretty(&waypoints_json(&path)).expect("serializable"))?;
            }
            if let Some(out) = svg {
                let params = make_params(eps, ParamMode::SingleShot)?;
                let sketch = build_sketch(&dom, &params).ok();
                let overlays = SvgOverlays {
                    sketch: sketch.as_ref(),
                    paths: vec![(&path, "approximate")],
                    ..Default::default()
                };
                emit_svg(&dom, &overlays, &out)?;
            }
            Ok(())
        }
        Command::Sketch { domain, eps, query_mode, svg, json_out } => {
            let (_, dom) = load_domain(&domain)?;
            let mode =
                if query_mode { ParamMode::TwoPointQuery } else { ParamMode::SingleShot };
            let params = make_params(eps, mode)?;
            let sketch = build_sketch(&dom, &params)?;
            let coreset_total: usize = sketch.coresets.iter().map(|c| c.vertex_indices.len()).sum();
            println!(
                "eps {} eps' {:.6} patch_angle {:.6} cones {}",
                params.eps, params.eps_prime, params.patch_angle, params.cone_count
            );
            println!(
                "obstacles {} coreset_vertices {} gamma {:.9}",
                dom.obstacles.len(),
                coreset_total,
                sketch.gamma
            );
            if let Some(out) = json_out {
                std::fs::write(out, serde_json::to_string_pretty(&sketch).expect("serializable"))?;
            }
            if let Some(out) = svg {
                let overlays = SvgOverlays { sketch: Some(&sketch), ..Default::default() };
                emit_svg(&dom, &overlays, &out)?;
            }
            Ok(())
        }
        Command::Preprocess { domain, eps, out } => {
            let (_, dom) = load_domain(&domain)?;
            let qs = preprocess(&dom, eps)?;
            std::fs::write(out, qs.save_json())?;
            println!(
                "nodes {} planar_edges {} certificate {:.6}",
                qs.spanner.nodes.len(),
                qs.planar.edges.len(),
                qs.planar.certificate
            );
            Ok(())
        }
        Command::Query { structure, from, to } => {
            let text = std::fs::read_to_string(structure)?;
            let qs = QueryStructure::load_json(&text)?;
            let s = parse_point(&from, None)?;
            let t = parse_point(&to, None)?;
            let (d, _) = qs.query_distance(s, t)?;
            println!("distance {d:.9}");
            Ok(())
        }
        Command::Oracle { domain, from, to, svg } => {
            let (file, dom) = load_domain(&domain)?;
            let s = parse_point(&from, Some(&file))?;
            let t = parse_point(&to, Some(&file))?;
            let (d, path) = exact_shortest_path(&dom, s, t)?;
            println!("length {d:.9}");
            for p in &path.waypoints {
                println!("  {:.9} {:.9}", p.x, p.y);
            }
            if let Some(out) = svg {
                let overlays =
                    SvgOverlays { paths: vec![(&path, "exact")], ..Default::default() };
                emit_svg(&dom, &overlays, &out)?;
            }
            Ok(())
        }
        Command::Gen { seed, h, n, shape, out } => {
            let shape = match shape {
                Shape::Convex => ObstacleShape::Convex,
                Shape::Simple => ObstacleShape::Simple,
            };
            let file = generate_instance(seed, h, n, shape)?;
            let text = serde_json::to_string_pretty(&file).expect("serializable");
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => println!("{text}"),
            }
            Ok(())
        }
        Command::Bench { eps, mode, seed_start, seed_count, h, n, shape, pairs } => {
            let shape = match shape {
                Shape::Convex => ObstacleShape::Convex,
                Shape::Simple => ObstacleShape::Simple,
            };
            println!("seed,pair,h,n,eps,exact,approx,stretch,exact_ms,approx_ms");
            let rows: Vec<String> = (seed_start..seed_start + seed_count)
                .into_par_iter()
                .map(|seed| {
                    use rand::SeedableRng;
                    let mut out = String::new();
                    let Ok(file) = generate_instance(seed, h, n, shape) else {
                        return out;
                    };
                    let dom = file.to_domain().expect("generated domain is valid");
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
                    for pair in 0..pairs {
                        let s = pathsketch::domain_io::random_free_point(&dom, &mut rng);
                        let t = pathsketch::domain_io::random_free_point(&dom, &mut rng);
                        let t0 = Instant::now();
                        let Ok((exact, _)) = exact_shortest_path(&dom, s, t) else {
                            continue;
                        };
                        let exact_ms = t0.elapsed().as_secs_f64() * 1e3;
                        let t1 = Instant::now();
                        let Ok(path) = route(&dom, s, t, eps, mode) else { continue };
                        let approx_ms = t1.elapsed().as_secs_f64() * 1e3;
                        out.push_str(&format!(
                            "{seed},{pair},{h},{n},{eps},{exact:.9},{:.9},{:.6},{exact_ms:.3},{approx_ms:.3}\n",
                            path.length,
                            path.length / exact.max(1e-300),
                        ));
                    }
                    out
                })
                .collect();
            for row in rows {
                print!("{row}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Unreachable) => {
            eprintln!("error: no path exists between the query points");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
