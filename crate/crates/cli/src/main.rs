use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aperiodic_core::data::{phi, u_tiles};
use aperiodic_core::exactnum::Golden;
use aperiodic_core::geometry::{Point, TorusPartition};
use aperiodic_core::markers::{find_markers, find_substitution, is_equivalent, Side};
use aperiodic_core::morphism2d::Morphism2d;
use aperiodic_core::pet::{config_patch, enumerate_language, induced_partition, Window, Z2Action};
use aperiodic_core::selfsim::{partition_u, verify_all, wang_language, VerifyOptions};
use aperiodic_core::wangtiles::{Lattice, TilingInstance, WangTileSet};
use aperiodic_core::word2d::{Axis, Shape, Word2d};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

mod svg;

#[derive(Parser)]
#[command(name = "aperiodic-kit", version, about = "Wang tiles, 2D substitutions and polygon exchanges of a self-similar aperiodic tiling")]
struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "APERIODIC_KIT_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Marker sets of a tile set.
    Markers {
        tiles: PathBuf,
        #[arg(long, value_parser = parse_axis, default_value = "2")]
        axis: Axis,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Desubstitute a tile set along a marker set.
    Desub {
        tiles: PathBuf,
        #[arg(long, value_parser = parse_axis, default_value = "2")]
        axis: Axis,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value = "right")]
        side: Side,
        /// Comma-separated tile indices; defaults to the first marker set found.
        #[arg(long, value_delimiter = ',')]
        markers: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color renaming between two tile sets.
    Equiv {
        from: PathBuf,
        to: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a valid rectangular (or toroidal) pattern.
    Solve {
        tiles: PathBuf,
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        /// Identify opposite sides of the rectangle.
        #[arg(long)]
        torus: bool,
        #[arg(long, value_enum, default_value = "backtrack")]
        backend: Backend,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Language of one of the three descriptions for one shape.
    Lang {
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        #[arg(long, value_enum, default_value = "phi")]
        source: Source,
        /// Tile set for the Wang source (default: the 19 canonical tiles).
        #[arg(long)]
        tiles: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Induce a toral rotation on a window of the form x_axis <= bound.
    Induce {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_parser = parse_axis, default_value = "2")]
        axis: Axis,
        #[arg(long, default_value = "-1+phi")]
        bound: Golden,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coded configuration patch of an orbit.
    Config {
        #[command(flatten)]
        system: SystemArgs,
        /// Starting point "x,y" with rational or a+b*phi coordinates.
        #[arg(long, value_parser = parse_point)]
        seed_point: Point,
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Deterministic SVG of a tiling, a partition or a coded orbit.
    Render {
        #[arg(value_enum)]
        target: svg::Target,
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        palette_seed: u64,
        /// Rotation for coded orbits, as "alpha,beta".
        #[arg(long, value_parser = parse_point)]
        rotation: Option<Point>,
        #[arg(long, value_parser = parse_point)]
        seed_point: Option<Point>,
        #[arg(long, value_parser = parse_shape)]
        shape: Option<Shape>,
    },
    /// Run every pipeline and check.
    VerifyAll {
        /// Replace the canonical tile set, e.g. for fault injection.
        #[arg(long)]
        tiles: Option<PathBuf>,
        #[arg(long, value_parser = parse_shape, default_value = "2,2")]
        max_shape: Shape,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Largest surrounding radius tried when languages disagree.
        #[arg(long, default_value_t = 3)]
        max_radius: usize,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SystemArgs {
    /// Torus partition JSON (default: the 19-atom partition).
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Rotation "alpha,beta" acting on the partition's torus.
    #[arg(long, value_parser = parse_point)]
    rotation: Option<Point>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Backtrack,
    Dlx,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Phi,
    Wang,
    Pet,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Empty(String),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Empty(_) => 2,
            CliError::CheckFailed(_) => 3,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    let t = s.trim_start_matches('e');
    t.parse::<u8>().ok().and_then(Axis::from_index).ok_or_else(|| format!("axis must be 1 or 2, got {s:?}"))
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    let (w, h) = s.split_once(['x', ',']).ok_or_else(|| format!("shape must look like 3x2, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(w)?, p(h)?))
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected \"x,y\", got {s:?}"))?;
    let g = |t: &str| t.parse::<Golden>().map_err(|e| e.to_string());
    Ok([g(x)?, g(y)?])
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(input)? + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_system(args: &SystemArgs) -> Result<(TorusPartition, Z2Action), CliError> {
    match (&args.partition, &args.rotation) {
        (None, None) => partition_u().map_err(input),
        (Some(p), Some([a, b])) => {
            let part: TorusPartition = read_json(p)?;
            let action = Z2Action::toral_rotation(part.periods().clone(), a.clone(), b.clone()).map_err(input)?;
            Ok((part, action))
        }
        (None, Some([a, b])) => {
            let (part, _) = partition_u().map_err(input)?;
            let action = Z2Action::toral_rotation(part.periods().clone(), a.clone(), b.clone()).map_err(input)?;
            Ok((part, action))
        }
        (Some(_), None) => Err(CliError::Input("--partition needs --rotation".into())),
    }
}

#[derive(Serialize)]
struct InduceOutput {
    partition: TorusPartition,
    rotation: Option<[Point; 2]>,
    substitution: Morphism2d,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Markers { tiles, axis, radius, out } => {
            let t: WangTileSet = read_json(&tiles)?;
            let rep = find_markers(&t, axis, radius);
            emit(&rep, out.as_deref())?;
            if rep.marker_subsets.is_empty() {
                return Err(CliError::Empty(format!("no markers along {axis} at radius {radius}; try increasing the radius")));
            }
            Ok(())
        }
        Command::Desub { tiles, axis, radius, side, markers, out } => {
            let t: WangTileSet = read_json(&tiles)?;
            let m = match markers {
                Some(m) => m,
                None => find_markers(&t, axis, radius).marker_subsets.into_iter().next().ok_or_else(|| {
                    CliError::Empty(format!("no markers along {axis} at radius {radius}; try increasing the radius"))
                })?,
            };
            let res = find_substitution(&t, &m, axis, radius, side).map_err(input)?;
            emit(&res, out.as_deref())
        }
        Command::Equiv { from, to, out } => {
            let a: WangTileSet = read_json(&from)?;
            let b: WangTileSet = read_json(&to)?;
            let eq = is_equivalent(&a, &b).ok_or_else(|| CliError::Empty("the tile sets are not equivalent".into()))?;
            emit(&eq, out.as_deref())
        }
        Command::Solve { tiles, shape, torus, backend, out } => {
            let t: WangTileSet = read_json(&tiles)?;
            let inst = if torus {
                let lattice = Lattice::from_basis([[shape.0 as i64, 0], [0, shape.1 as i64]]).map_err(input)?;
                TilingInstance::torus(&t, lattice)
            } else {
                TilingInstance::rectangle(&t, shape)
            };
            let sol = match backend {
                Backend::Backtrack => inst.solve(),
                Backend::Dlx => inst.solve_exact_cover(),
            };
            let w = sol.ok_or_else(|| CliError::Empty(format!("no valid {}x{} pattern", shape.0, shape.1)))?;
            emit(&w, out.as_deref())
        }
        Command::Lang { shape, source, tiles, radius, out } => {
            let lang = match source {
                Source::Phi => phi().language(shape, 64).map_err(input)?,
                Source::Wang => {
                    let t = match tiles {
                        Some(p) => read_json(&p)?,
                        None => u_tiles(),
                    };
                    wang_language(&t, shape, radius)
                }
                Source::Pet => {
                    let (p, a) = partition_u().map_err(input)?;
                    enumerate_language(&p, &a, shape).map_err(input)?
                }
            };
            eprintln!("{} words", lang.len());
            emit(&lang, out.as_deref())
        }
        Command::Induce { system, axis, bound, out } => {
            let (p, a) = load_system(&system)?;
            let ind = induced_partition(&p, &a, &Window::new(axis, bound)).map_err(input)?;
            let rotation = ind.action.rotation_vectors();
            emit(&InduceOutput { partition: ind.partition, rotation, substitution: ind.substitution }, out.as_deref())
        }
        Command::Config { system, seed_point, shape, out } => {
            let (p, a) = load_system(&system)?;
            let w: Word2d = config_patch(&p, &a, &seed_point, shape, (0, 0)).map_err(input)?;
            emit(&w, out.as_deref())
        }
        Command::Render { target, input: path, out, palette_seed, rotation, seed_point, shape } => {
            let text = fs::read_to_string(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let orbit = svg::OrbitArgs { rotation, seed_point, shape };
            let doc = svg::render(target, &text, palette_seed, &orbit).map_err(CliError::Input)?;
            fs::write(&out, doc).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))
        }
        Command::VerifyAll { tiles, max_shape, radius, max_radius, out } => {
            let tiles = match tiles {
                Some(p) => read_json(&p)?,
                None => u_tiles(),
            };
            let report = verify_all(&VerifyOptions { tiles, max_shape, radius, max_radius });
            println!("{report}");
            if let Some(p) = out {
                emit(&report, Some(&p))?;
            }
            match report.first_failure() {
                None => Ok(()),
                Some(c) => Err(CliError::CheckFailed(format!("verification failed at stage {}: {}", c.stage, c.name))),
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
