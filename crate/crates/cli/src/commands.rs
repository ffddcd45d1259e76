use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use hilbtex::batch::analyze_grid;
use hilbtex::imageio::{
    center_crop_pow2, load_image, rotate_arbitrary, transform, write_pgm16, Transform,
};
use hilbtex::ordinal::{MAX_ORDER, MIN_ORDER};
use hilbtex::patterns2d::{build_distribution_2d, PatchSpec};
use hilbtex::synth::{self, CascadeSpec, FbsSpec};
use hilbtex::{par, quantifiers, ScalarGrid};

use crate::args::{AnalyzeArgs, CascadeVariant, CompareArgs, GenerateArgs, PlotArgs, SurfaceKind};
use crate::error::CliError;
use crate::output::{read_sidecar, sidecar_path, write_json, Manifest, Sidecar, Surface};
use crate::plot;
use crate::table::{format_sig, read_rows, write_rows, AnalysisRow};

const IMAGE_EXTENSIONS: [&str; 6] = ["pgm", "ppm", "pnm", "png", "tif", "tiff"];
const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A transform applied before analysis: a lossless rigid move of the cropped
/// grid, or an arbitrary rotation of the full image followed by cropping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformOp {
    Rigid(Transform),
    Rotate(f64),
}

impl TransformOp {
    pub fn name(&self) -> String {
        match self {
            TransformOp::Rigid(t) => t.name().to_string(),
            TransformOp::Rotate(deg) => format!("rot{}", format_sig(*deg, 12)),
        }
    }
}

impl FromStr for TransformOp {
    type Err = hilbtex::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(t) = s.parse::<Transform>() {
            return Ok(TransformOp::Rigid(t));
        }
        match s.strip_prefix("rot").map(str::parse::<f64>) {
            Some(Ok(deg)) if deg.is_finite() => Ok(TransformOp::Rotate(deg)),
            _ => Err(hilbtex::Error::Argument(format!(
                "unknown transform {s:?}; use id, rot90, rot180, rot270, mirror or rot<degrees>"
            ))),
        }
    }
}

fn check_dim(dim: usize) -> Result<(), CliError> {
    if (MIN_ORDER..=MAX_ORDER).contains(&dim) {
        Ok(())
    } else {
        Err(hilbtex::Error::Argument(format!(
            "D = {dim} is outside {MIN_ORDER}..={MAX_ORDER} (alphabet {dim}! too large or trivial)"
        ))
        .into())
    }
}

fn check_delay(delay: usize) -> Result<(), CliError> {
    if delay == 0 {
        return Err(hilbtex::Error::Argument("delay must be >= 1".into()).into());
    }
    Ok(())
}

fn create_parent(path: &Path) -> Result<(), CliError> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })
        }
        _ => Ok(()),
    }
}

fn has_image_extension(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

/// Files stay as given; directories contribute their image files sorted by
/// name.
pub fn expand_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let io_err = |source| CliError::Io {
                path: input.clone(),
                source,
            };
            let mut files: Vec<PathBuf> = fs::read_dir(input)
                .map_err(io_err)?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()
                .map_err(io_err)?;
            files.retain(|p| p.is_file() && has_image_extension(p));
            files.sort();
            out.extend(files);
        } else {
            out.push(input.clone());
        }
    }
    Ok(out)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn load_square(path: &Path) -> hilbtex::Result<(hilbtex::grid::Matrix, ScalarGrid)> {
    let matrix = load_image(path)?.to_matrix()?;
    let (grid, _) = center_crop_pow2(&matrix)?;
    Ok((matrix, grid))
}

fn collect_batch(
    results: Vec<(PathBuf, hilbtex::Result<Vec<AnalysisRow>>)>,
) -> (Vec<AnalysisRow>, Option<CliError>) {
    let total = results.len();
    let mut rows = Vec::new();
    let mut failed = 0;
    let mut computation = false;
    for (path, result) in results {
        match result {
            Ok(r) => rows.extend(r),
            Err(e) => {
                log::error!("{}: {e}", path.display());
                failed += 1;
                computation |= !e.is_input_error();
            }
        }
    }
    let err = (failed > 0).then_some(CliError::Partial {
        failed,
        total,
        computation,
    });
    (rows, err)
}

fn seeds_of(paths: &[PathBuf]) -> Vec<u64> {
    paths
        .iter()
        .filter_map(|p| read_sidecar(p).and_then(|s| s.seed))
        .collect()
}

fn manifest<'a>(
    verb: &'a str,
    argv: &[String],
    inputs: &[PathBuf],
    outputs: &[&Path],
) -> Manifest<'a> {
    Manifest {
        tool: "hilbtex",
        version: VERSION,
        verb,
        arguments: argv.to_vec(),
        inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        seeds: seeds_of(inputs),
        parallel: par::is_parallel(),
    }
}

pub fn generate(a: &GenerateArgs, argv: &[String]) -> Result<(), CliError> {
    let (grid, surface, seed) = match a.kind {
        SurfaceKind::Cascade => {
            let spec = CascadeSpec::new(&a.probs, a.steps)?;
            let base = synth::cascade(&spec)?;
            let (grid, seed) = match a.variant {
                CascadeVariant::Plain => (base, None),
                CascadeVariant::Ordered => (synth::ordered_variant(&base), None),
                CascadeVariant::Randomized => {
                    (synth::randomized_variant(&base, a.seed), Some(a.seed))
                }
            };
            let variant = format!("{:?}", a.variant).to_lowercase();
            (grid, Surface::Cascade { spec, variant }, seed)
        }
        SurfaceKind::Fbs => {
            let spec = FbsSpec {
                hurst: a.hurst,
                level: a.level,
                seed: a.seed,
            };
            let grid = synth::brownian_surface(&spec)?;
            (grid, Surface::Fbs { spec }, Some(a.seed))
        }
    };
    create_parent(&a.out)?;
    let quantization = write_pgm16(&grid, &a.out)?;
    let sidecar = Sidecar {
        surface,
        seed,
        side: grid.side(),
        quantization,
        version: VERSION.to_string(),
    };
    let side_path = sidecar_path(&a.out);
    write_json(&side_path, &sidecar)?;
    let mut m = manifest("generate", argv, &[], &[&a.out, &side_path]);
    m.seeds = seed.into_iter().collect();
    write_json(&Manifest::path_for(&a.out), &m)?;
    log::info!(
        "wrote {} ({}x{})",
        a.out.display(),
        grid.side(),
        grid.side()
    );
    Ok(())
}

fn analyze_one(
    path: &Path,
    dim: Option<usize>,
    delay: usize,
    ops: &[TransformOp],
) -> hilbtex::Result<Vec<AnalysisRow>> {
    let sidecar = read_sidecar(path);
    let dim = dim
        .or(sidecar.as_ref().map(Sidecar::default_dim))
        .unwrap_or(8);
    let (matrix, base) = load_square(path)?;
    let name = stem(path);
    ops.iter()
        .map(|op| {
            let grid = match *op {
                TransformOp::Rigid(t) => transform(&base, t),
                TransformOp::Rotate(deg) => rotate_arbitrary(&matrix, deg)?,
            };
            let a = analyze_grid(&grid, dim, delay)?;
            let transform = op.name();
            Ok(AnalysisRow {
                label: format!("{name}_{transform}_D{dim}_t{delay}"),
                source: path.display().to_string(),
                method: "hilbert".into(),
                dim,
                tau: delay,
                transform,
                entropy: a.triple.entropy,
                complexity: a.triple.complexity,
                fisher: a.triple.fisher,
                samples: a.samples,
                undersampled: a.undersampled,
                seed: sidecar.as_ref().and_then(|s| s.seed),
            })
        })
        .collect()
}

pub fn analyze(a: &AnalyzeArgs, argv: &[String]) -> Result<(), CliError> {
    if let Some(d) = a.dim {
        check_dim(d)?;
    }
    check_delay(a.delay)?;
    let ops: Vec<TransformOp> = a
        .transforms
        .iter()
        .map(|t| t.parse())
        .collect::<Result<_, _>>()?;
    let paths = expand_inputs(&a.inputs)?;
    let results = par::map(&paths, |p| {
        (p.clone(), analyze_one(p, a.dim, a.delay, &ops))
    });
    let (rows, failure) = collect_batch(results);
    create_parent(&a.out)?;
    write_rows(&a.out, &rows)?;
    write_json(
        &Manifest::path_for(&a.out),
        &manifest("analyze", argv, &paths, &[&a.out]),
    )?;
    failure.map_or(Ok(()), Err)
}

fn compare_one(
    path: &Path,
    dim: usize,
    delay: usize,
    spec: &PatchSpec,
) -> hilbtex::Result<Vec<AnalysisRow>> {
    let (_, grid) = load_square(path)?;
    let seed = read_sidecar(path).and_then(|s| s.seed);
    let name = stem(path);
    let hilbert = analyze_grid(&grid, dim, delay)?;
    let dist = build_distribution_2d(&grid, spec)?;
    let patch = quantifiers::info_triple(&dist)?;
    let row = |method: &str,
               tag: String,
               tau: usize,
               t: quantifiers::InfoTriple,
               samples: u64,
               under: bool| AnalysisRow {
        label: format!("{name}_{tag}_D{dim}_t{tau}"),
        source: path.display().to_string(),
        method: method.into(),
        dim,
        tau,
        transform: "id".into(),
        entropy: t.entropy,
        complexity: t.complexity,
        fisher: t.fisher,
        samples,
        undersampled: under,
        seed,
    };
    Ok(vec![
        row(
            "hilbert",
            "hilbert".into(),
            delay,
            hilbert.triple,
            hilbert.samples,
            hilbert.undersampled,
        ),
        row(
            "patch2d",
            format!("patch{}x{}", spec.dx, spec.dy),
            spec.tau_x,
            patch,
            dist.samples(),
            dist.undersampled(),
        ),
    ])
}

pub fn compare(a: &CompareArgs, argv: &[String]) -> Result<(), CliError> {
    let spec: PatchSpec = a.patch.parse()?;
    let dim = a.dim.unwrap_or(spec.order());
    check_dim(dim)?;
    check_delay(a.delay)?;
    if spec.order() != dim {
        return Err(hilbtex::Error::Argument(format!(
            "patch {}x{} has {} cells but D = {dim}",
            spec.dx,
            spec.dy,
            spec.order()
        ))
        .into());
    }
    let paths = expand_inputs(&a.inputs)?;
    let results = par::map(&paths, |p| (p.clone(), compare_one(p, dim, a.delay, &spec)));
    let (rows, failure) = collect_batch(results);
    create_parent(&a.out)?;
    write_rows(&a.out, &rows)?;
    write_json(
        &Manifest::path_for(&a.out),
        &manifest("compare", argv, &paths, &[&a.out]),
    )?;
    failure.map_or(Ok(()), Err)
}

pub fn plot(a: &PlotArgs, argv: &[String]) -> Result<(), CliError> {
    if let Some(d) = a.dim {
        check_dim(d)?;
    }
    let rows = read_rows(&a.csv)?;
    let svg = plot::render(&rows, a.plane, a.group, a.dim)?;
    create_parent(&a.out)?;
    fs::write(&a.out, svg).map_err(|source| CliError::Io {
        path: a.out.clone(),
        source,
    })?;
    write_json(
        &Manifest::path_for(&a.out),
        &manifest("plot", argv, std::slice::from_ref(&a.csv), &[&a.out]),
    )
}
