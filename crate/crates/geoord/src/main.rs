//! Command-line front end: demo-curve generation, sampling checks, ordering,
//! interpolation, frame ordering and SVG plots.
//!
//! Exit codes: 0 success, 2 when ordering fails because the spanning tree
//! branches (the sample is not dense), 1 for any input or data error.

use clap::{Parser, Subcommand};
use geoord::demo;
use geoord::error::Error;
use geoord::frames::{order_frames, FrameRecord};
use geoord::interpolate::{
    interpolate_decasteljau, interpolate_geodesic, interpolate_partial_geodesic, BoundaryData,
};
use geoord::io::{load_json, save_json, CurveFile, OrderFile, SampleFile, TruthFile};
use geoord::lie::MetricWeights;
use geoord::plot;
use geoord::reconstruct::{
    build_graph_with_threads, close_loop, extract_path, mst, order_nn_graph, order_nncrust_r3,
    Algorithm, OrderedPath,
};
use geoord::sampling::{check_uniform_sample, epsilon_bound, SamplePoints};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "geoord",
    version,
    about = "Curve reconstruction and interpolation on S2, SE(2), SE(3) and scaled planar motions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reorder an unordered sample file.
    Order {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Rotation metric weight.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Translation metric weight.
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value = "mst")]
        algo: String,
        /// Start index, required by --algo nn.
        #[arg(long)]
        start: Option<String>,
        /// Loop-closure slack on the joining edge.
        #[arg(long, default_value_t = 0.25)]
        slack: f64,
        /// Worker threads for the distance matrix (GEOORD_THREADS wins).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Interpolate an ordered sample into a smooth motion.
    Interpolate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Ordering file (from `order` or a demo truth file); identity
        /// order when absent.
        #[arg(long)]
        truth: Option<PathBuf>,
        #[arg(long, default_value = "geodesic")]
        scheme: String,
        /// Subdivisions per segment (geodesic/partial) or output sample
        /// count (decasteljau).
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Generate a shuffled demo curve sample plus its ground truth.
    Demo {
        /// One of sphere-wave, sphere-loop, se2-circle, se3-trajectory,
        /// scaled-se2-spiral, plane-ellipse.
        name: String,
        /// Sample count.
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Density-check a sample against its truth file.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Render a curve or sample file to SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        /// Optional ordering file to connect sample points.
        #[arg(long)]
        truth: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Order motion frames from oracle poses or rectangle masks.
    Frames {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value = "mst")]
        algo: String,
        /// Start frame id, required by --algo nn.
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 0.25)]
        slack: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BranchingTree { .. } | Error::NonManifoldOutput { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

/// Read an ordering out of either an OrderFile or a demo TruthFile.
fn load_order_like(path: &Path) -> Result<(Vec<usize>, bool), Error> {
    let value: serde_json::Value = load_json(path)?;
    let order = value
        .get("order")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::InvalidInput(format!("{} has no order field", path.display())))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as usize))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| Error::InvalidInput("order entries must be indices".into()))?;
    let closed = value
        .get("closed")
        .and_then(|v| v.as_bool())
        .unwrap_or(false);
    Ok((order, closed))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Order {
            input,
            output,
            alpha,
            beta,
            algo,
            start,
            slack,
            threads,
        } => {
            let weights = MetricWeights::new(alpha, beta)?;
            let file: SampleFile = load_json(&input)?;
            let set = file.to_sample_set(weights)?;
            let algorithm: Algorithm = algo.parse()?;
            let path = match algorithm {
                Algorithm::Mst => {
                    let g = build_graph_with_threads(&set, threads)?;
                    close_loop(extract_path(&mst(&g))?, &g, slack)
                }
                Algorithm::Nn => {
                    let start = start.ok_or(Error::StartRequired)?;
                    let idx: usize = start
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad start index {start}")))?;
                    if idx >= set.len() {
                        return Err(Error::IndexOutOfRange {
                            index: idx,
                            len: set.len(),
                        });
                    }
                    let g = build_graph_with_threads(&set, threads)?;
                    order_nn_graph(&g, idx)
                }
                Algorithm::NnCrust => order_nncrust_r3(&set, &weights)?,
            };
            save_json(&output, &OrderFile::from_path(&path))?;
            Ok(())
        }
        Cmd::Interpolate {
            input,
            output,
            truth,
            scheme,
            k,
            alpha,
            beta,
        } => {
            let weights = MetricWeights::new(alpha, beta)?;
            let file: SampleFile = load_json(&input)?;
            let set = file.to_sample_set(weights)?;
            let (order, closed) = match truth {
                Some(p) => load_order_like(&p)?,
                None => ((0..set.len()).collect(), false),
            };
            let path = OrderedPath {
                order,
                closed,
                algorithm: Algorithm::Mst,
                max_degree: 2,
            };
            let curve = match scheme.as_str() {
                "geodesic" => interpolate_geodesic(&path, &set, k.max(1))?,
                "partial" | "partial_geodesic" => {
                    interpolate_partial_geodesic(&path, &set, k.max(1))?
                }
                "decasteljau" | "de_casteljau" => {
                    let motions = match set.points() {
                        SamplePoints::Se3(v) => v.clone(),
                        other => {
                            return Err(Error::ManifoldMismatch {
                                expected: "se3",
                                got: other.kind().as_str(),
                            })
                        }
                    };
                    if motions.len() != 2 {
                        return Err(Error::InvalidInput(
                            "decasteljau takes exactly two frames".into(),
                        ));
                    }
                    let twists = file.boundary_twists().ok_or_else(|| {
                        Error::InvalidInput(
                            "decasteljau needs a velocities field with two twists".into(),
                        )
                    })?;
                    if twists.len() != 2 {
                        return Err(Error::InvalidInput(
                            "velocities must hold exactly two twists".into(),
                        ));
                    }
                    let b = BoundaryData::new(motions[0], motions[1], twists[0], twists[1])?;
                    interpolate_decasteljau(&b, k.max(2))?
                }
                other => return Err(Error::InvalidInput(format!("unknown scheme {other}"))),
            };
            save_json(&output, &CurveFile::from_motion_curve(&curve))?;
            Ok(())
        }
        Cmd::Demo {
            name,
            n,
            seed,
            output,
            truth,
            alpha,
            beta,
        } => {
            let weights = MetricWeights::new(alpha, beta)?;
            let (set, path, meta) = demo::generate(&name, n, seed, weights)?;
            save_json(&output, &SampleFile::from_sample_set(&set))?;
            save_json(
                &truth,
                &TruthFile {
                    curve: meta.curve,
                    order: path.order,
                    closed: meta.closed,
                    epsilon: meta.epsilon,
                    n,
                    seed,
                },
            )?;
            Ok(())
        }
        Cmd::Check {
            input,
            truth,
            output,
            alpha,
            beta,
        } => {
            let weights = MetricWeights::new(alpha, beta)?;
            let file: SampleFile = load_json(&input)?;
            let set = file.to_sample_set(weights)?;
            let truth_file: TruthFile = load_json(&truth)?;
            let (feature, inj) = demo::registered_bound(&truth_file.curve, &weights)?;
            let bound = epsilon_bound(feature, inj);
            let report = check_uniform_sample(
                &set,
                &truth_file.order,
                truth_file.closed,
                truth_file.epsilon,
                bound,
            )?;
            save_json(&output, &report)?;
            Ok(())
        }
        Cmd::Plot {
            input,
            truth,
            output,
        } => {
            let value: serde_json::Value = load_json(&input)?;
            let svg = if value.get("samples").is_some() {
                let curve: CurveFile = serde_json::from_value(value)?;
                let glyph_every = (curve.samples.len() / 16).max(1);
                plot::render_curve(&curve, glyph_every)
            } else {
                let sample: SampleFile = serde_json::from_value(value)?;
                match truth {
                    Some(p) => {
                        let (order, closed) = load_order_like(&p)?;
                        plot::render_samples(&sample, Some((&order, closed)))?
                    }
                    None => plot::render_samples(&sample, None)?,
                }
            };
            std::fs::write(&output, svg)?;
            Ok(())
        }
        Cmd::Frames {
            input,
            output,
            algo,
            start,
            alpha,
            beta,
            slack,
        } => {
            let weights = MetricWeights::new(alpha, beta)?;
            let records: Vec<FrameRecord> = load_json(&input)?;
            let algorithm: Algorithm = algo.parse()?;
            let result = order_frames(&records, &weights, algorithm, start.as_deref(), slack)?;
            save_json(&output, &result)?;
            Ok(())
        }
    }
}
