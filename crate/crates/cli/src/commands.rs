use qtc3d::analysis::{
    angle_histograms, entropy, entropy_reports, histogram_of_tuples, sweep, write_angle_histogram_csv,
    write_reports_csv, write_sweep_csv, AnalysisOptions, AnalysisReport, EntropyReport, LabeledPair, PairClass,
};
use qtc3d::frenet::discrete_frames;
use qtc3d::qtc::{
    encode as encode_pair, read_sequence_csv, read_sequence_json, write_sequence_csv, write_sequence_json,
    EncodeConfig, QtcTuple, Variant, Warnings,
};
use qtc3d::trajectory::{
    centered_start, load_csv, synth_follower, synth_leader, synth_nonfollower, truncate_sync, write_csv, Trajectory,
    TrajectoryPair,
};
use qtc3d::QtcError;

use crate::config::{Format, RunConfig};
use crate::manifest::{self, Source, TrajectoryCache};
use crate::output::{json, write_to};
use crate::CliError;

fn load_all(cfg: &RunConfig) -> Result<Vec<Trajectory>, CliError> {
    if cfg.input.is_empty() {
        return Err(QtcError::InvalidArgument("no --input given".into()).into());
    }
    let columns = cfg.columns();
    let mut out = Vec::new();
    for p in &cfg.input {
        out.extend(load_csv(p, &columns, cfg.dt)?);
    }
    Ok(out)
}

fn pick(all: &[Trajectory], id: &str) -> Result<Trajectory, CliError> {
    all.iter()
        .find(|t| t.object_id() == id)
        .cloned()
        .ok_or_else(|| QtcError::UnknownObject(id.to_string()).into())
}

/// The analysis window selected by `--start`, `--count` and `--centered`.
fn window(pair: TrajectoryPair, cfg: &RunConfig) -> Result<TrajectoryPair, CliError> {
    if cfg.start.is_none() && cfg.count.is_none() {
        return Ok(pair);
    }
    let len = pair.len();
    let start = match (cfg.start, cfg.count) {
        (Some(s), _) => s,
        (None, Some(c)) if cfg.centered.unwrap_or(false) => centered_start(len, c)?,
        _ => 0,
    };
    let count = match cfg.count {
        Some(c) => c,
        None => len.checked_sub(start).ok_or(QtcError::OutOfRange { start, count: 0, len })?,
    };
    Ok(truncate_sync(&pair, start, count)?)
}

fn load_pair(cfg: &RunConfig) -> Result<TrajectoryPair, CliError> {
    let all = load_all(cfg)?;
    let (k, l) = match (&cfg.k, &cfg.l) {
        (Some(k), Some(l)) => (pick(&all, k)?, pick(&all, l)?),
        (None, None) if all.len() == 2 => (all[0].clone(), all[1].clone()),
        _ => {
            return Err(QtcError::InvalidArgument(format!(
                "choose the pair with --k and --l ({} objects loaded)",
                all.len()
            ))
            .into())
        }
    };
    window(TrajectoryPair::new(k, l)?, cfg)
}

fn analysis_options(cfg: &RunConfig) -> AnalysisOptions {
    AnalysisOptions {
        mode: cfg.transform_mode(),
        frames: cfg.frame_options(),
        exclude_undefined: cfg.exclude_undefined.unwrap_or(false),
    }
}

pub fn encode(cfg: &RunConfig) -> Result<(), CliError> {
    let pair = load_pair(cfg)?;
    let enc = EncodeConfig {
        variant: cfg.variant.unwrap_or(Variant::ThreeD),
        thresholds: cfg.thresholds(),
        mode: cfg.transform_mode(),
        frames: cfg.frame_options(),
    };
    let seq = encode_pair(&pair, &enc)?;
    write_to(cfg.output.as_deref(), |w| {
        match cfg.format() {
            Format::Csv => write_sequence_csv(&seq, w)?,
            Format::Json => write_sequence_json(&seq, w)?,
        }
        Ok(())
    })
}

pub fn frames(cfg: &RunConfig) -> Result<(), CliError> {
    let all = load_all(cfg)?;
    let traj = match cfg.object.as_ref().or(cfg.k.as_ref()) {
        Some(id) => pick(&all, id)?,
        None if all.len() == 1 => all[0].clone(),
        None => {
            return Err(QtcError::InvalidArgument(format!("choose one of {} objects with --object", all.len())).into())
        }
    };
    let traj = window(TrajectoryPair::new(traj.clone(), traj)?, cfg)?.k().clone();
    let frames = discrete_frames(&traj, &cfg.frame_options())?;
    write_to(cfg.output.as_deref(), |w| {
        match cfg.format() {
            Format::Json => json(w, &frames)?,
            Format::Csv => {
                let io = |e: std::io::Error| CliError::from(QtcError::from(e));
                writeln!(w, "tau,tx,ty,tz,nx,ny,nz,bx,by,bz,degeneracy,defined").map_err(io)?;
                for f in &frames {
                    let (t, n, b) = (f.t, f.n, f.b);
                    writeln!(
                        w,
                        "{},{},{},{},{},{},{},{},{},{},{},{}",
                        f.index, t.x, t.y, t.z, n.x, n.y, n.z, b.x, b.y, b.z,
                        f.degeneracy.as_str(),
                        f.defined
                    )
                    .map_err(io)?;
                }
            }
        }
        Ok(())
    })
}

pub fn histogram(cfg: &RunConfig) -> Result<(), CliError> {
    let pair = load_pair(cfg)?;
    let h = angle_histograms(&pair, cfg.transform_mode(), &cfg.frame_options(), cfg.bin_width_deg.unwrap_or(8.0))?;
    write_to(cfg.output.as_deref(), |w| {
        match cfg.format() {
            Format::Csv => write_angle_histogram_csv(&h, w)?,
            Format::Json => json(w, &h)?,
        }
        Ok(())
    })
}

fn read_stored_sequence(path: &std::path::Path) -> Result<(Vec<QtcTuple>, Option<f64>), CliError> {
    let file = std::fs::File::open(path).map_err(QtcError::from)?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let (variant, tuples, th) = if is_json {
        let seq = read_sequence_json(file)?;
        (seq.variant, seq.tuples, Some(seq.thresholds.tait_bryan))
    } else {
        let (v, t) = read_sequence_csv(file)?;
        (v, t, None)
    };
    if variant != Variant::ThreeD {
        return Err(QtcError::InvalidArgument(format!("{}: variant {variant} has no G, H, I symbols", path.display())).into());
    }
    Ok((tuples, th))
}

/// Entries resolved to labeled pairs, plus the rows that already carry an
/// entropy (`Err` slots hold those reports).
fn resolve(
    cfg: &RunConfig,
    entries: Vec<manifest::Entry>,
    th: f64,
    opts: &AnalysisOptions,
) -> Result<Vec<Result<LabeledPair, EntropyReport>>, CliError> {
    let columns = cfg.columns();
    let mut cache = TrajectoryCache::default();
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let report = |entropy, th| EntropyReport { pair_label: e.label.clone(), class: e.class, th, entropy };
        match &e.source {
            Source::Entropy(v) => out.push(Err(report(*v, th))),
            Source::Sequence(path) => {
                let (tuples, stored_th) = read_stored_sequence(path)?;
                let kept = tuples
                    .iter()
                    .filter(|t| !(opts.exclude_undefined && t.warnings.contains(Warnings::UNDEFINED_FRAME)));
                let h = histogram_of_tuples(kept, true)?;
                out.push(Err(report(entropy(&h)?, stored_th.unwrap_or(th))));
            }
            Source::Pair { inputs, k, l } => {
                let k = cache.find(inputs, k, &columns, cfg.dt)?;
                let l = cache.find(inputs, l, &columns, cfg.dt)?;
                let pair = window(TrajectoryPair::new(k, l)?, cfg)?;
                out.push(Ok(LabeledPair { label: e.label.clone(), class: e.class, pair }));
            }
        }
    }
    Ok(out)
}

fn manifest_entries(cfg: &RunConfig) -> Result<Vec<manifest::Entry>, CliError> {
    let path = cfg
        .manifest
        .as_ref()
        .ok_or_else(|| QtcError::InvalidArgument("no --manifest given".into()))?;
    manifest::read(path, &cfg.input)
}

pub fn analyze(cfg: &RunConfig) -> Result<(), CliError> {
    let th = cfg.th();
    let opts = analysis_options(cfg);
    let resolved = resolve(cfg, manifest_entries(cfg)?, th, &opts)?;
    let pairs: Vec<LabeledPair> = resolved.iter().filter_map(|r| r.as_ref().ok().cloned()).collect();
    let mut computed = entropy_reports(&pairs, th, &opts)?.into_iter();
    let reports: Vec<EntropyReport> = resolved
        .into_iter()
        .map(|r| match r {
            Ok(_) => computed.next().expect("one report per pair"),
            Err(done) => done,
        })
        .collect();
    let report = AnalysisReport::new(th, reports);
    write_to(cfg.output.as_deref(), |w| {
        match cfg.format() {
            Format::Csv => write_reports_csv(&report, w)?,
            Format::Json => json(w, &report)?,
        }
        Ok(())
    })
}

pub fn sweep_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let grid = cfg.grid()?;
    let opts = analysis_options(cfg);
    let pairs = resolve(cfg, manifest_entries(cfg)?, 0.0, &opts)?
        .into_iter()
        .map(|r| {
            r.map_err(|rep| {
                QtcError::InvalidArgument(format!("sweep needs trajectories; '{}' is precomputed", rep.pair_label))
                    .into()
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let result = sweep(&pairs, &grid, &opts)?;
    write_to(cfg.output.as_deref(), |w| {
        match cfg.format() {
            Format::Csv => write_sweep_csv(&result, w)?,
            Format::Json => json(w, &result)?,
        }
        Ok(())
    })
}

/// Writes `leader.csv`, `follower.csv`, `nonfollower.csv` and a
/// `manifest.csv` listing one LF and one LNF pair per seed.
pub fn synth(cfg: &RunConfig) -> Result<(), CliError> {
    let dir = cfg
        .output_dir
        .as_ref()
        .ok_or_else(|| QtcError::InvalidArgument("no --output-dir given".into()))?;
    std::fs::create_dir_all(dir).map_err(QtcError::from)?;
    let first = cfg.seed.unwrap_or(1);
    let n = cfg.pairs.unwrap_or(1);
    if n == 0 {
        return Err(QtcError::InvalidArgument("--pairs must be at least 1".into()).into());
    }
    let (mut leaders, mut followers, mut others) = (Vec::new(), Vec::new(), Vec::new());
    for seed in first..first + n {
        let c = cfg.synth(seed)?;
        let leader = synth_leader(&c)?;
        followers.push(synth_follower(&leader, &c)?.with_id(format!("follower-{seed}")));
        others.push(synth_nonfollower(&c)?.with_id(format!("nonfollower-{seed}")));
        leaders.push(leader.with_id(format!("leader-{seed}")));
    }
    for (name, set) in [("leader.csv", &leaders), ("follower.csv", &followers), ("nonfollower.csv", &others)] {
        write_to(Some(&dir.join(name)), |w| Ok(write_csv(set, w)?))?;
    }
    write_to(Some(&dir.join("manifest.csv")), |w| {
        let mut m = csv::Writer::from_writer(w);
        let csv_err = |e: csv::Error| CliError::from(QtcError::Io(e.into()));
        m.write_record(["label", "class", "input", "k", "l"]).map_err(csv_err)?;
        for seed in first..first + n {
            let leader = format!("leader-{seed}");
            m.write_record([
                format!("lf-{seed}"),
                PairClass::LeaderFollower.to_string(),
                "leader.csv;follower.csv".into(),
                leader.clone(),
                format!("follower-{seed}"),
            ])
            .map_err(csv_err)?;
            m.write_record([
                format!("lnf-{seed}"),
                PairClass::LeaderNonfollower.to_string(),
                "leader.csv;nonfollower.csv".into(),
                leader,
                format!("nonfollower-{seed}"),
            ])
            .map_err(csv_err)?;
        }
        m.flush().map_err(QtcError::from)?;
        Ok(())
    })
}
