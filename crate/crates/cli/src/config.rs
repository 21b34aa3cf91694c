use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use qtc3d::frenet::{DegeneracyPolicy, FrameOptions, TransformMode};
use qtc3d::geometry::Vec3;
use qtc3d::qtc::{Thresholds, Variant};
use qtc3d::trajectory::{ColumnMap, SynthConfig};
use qtc3d::QtcError;

use crate::CliError;

pub const DEFAULT_TH_DEG: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[value(alias = "world")]
    #[serde(alias = "world")]
    WorldFrame,
    #[value(alias = "body")]
    #[serde(alias = "body")]
    BodyFrame,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    CarryForward,
    MarkUndefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: QtcError| e.to_string())
}

/// Every setting of a run. Each field can come from a flag or from the
/// `--config` TOML file (same names, snake_case); flags win.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Trajectory CSV file; repeat for several files.
    #[arg(long, global = true, help_heading = "Input")]
    pub input: Vec<PathBuf>,
    /// Object id playing the role of k.
    #[arg(long, global = true, help_heading = "Input")]
    pub k: Option<String>,
    /// Object id playing the role of l.
    #[arg(long, global = true, help_heading = "Input")]
    pub l: Option<String>,
    /// Object whose frames `frames` dumps.
    #[arg(long, global = true, help_heading = "Input")]
    pub object: Option<String>,
    /// Pair list for `analyze` and `sweep`.
    #[arg(long, global = true, help_heading = "Input")]
    pub manifest: Option<PathBuf>,
    /// Sampling interval in seconds; inferred from timestamps when absent.
    #[arg(long, global = true, help_heading = "Input")]
    pub dt: Option<f64>,
    #[arg(long, global = true, help_heading = "Input")]
    pub col_id: Option<String>,
    #[arg(long, global = true, help_heading = "Input")]
    pub col_t: Option<String>,
    #[arg(long, global = true, help_heading = "Input")]
    pub col_x: Option<String>,
    #[arg(long, global = true, help_heading = "Input")]
    pub col_y: Option<String>,
    #[arg(long, global = true, help_heading = "Input")]
    pub col_z: Option<String>,
    /// First sample of the analysis window.
    #[arg(long, global = true, help_heading = "Input")]
    pub start: Option<usize>,
    /// Length of the analysis window.
    #[arg(long, global = true, help_heading = "Input")]
    pub count: Option<usize>,
    /// Center a `--count` window in the recording.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true", help_heading = "Input")]
    pub centered: Option<bool>,

    /// B1, B2, C1, C2 or 3D.
    #[arg(long, global = true, value_parser = parse_variant, help_heading = "Encoding")]
    pub variant: Option<Variant>,
    /// Tait-Bryan threshold in degrees.
    #[arg(long, global = true, help_heading = "Encoding")]
    pub th_deg: Option<f64>,
    /// Distance threshold in meters.
    #[arg(long, global = true, help_heading = "Encoding")]
    pub dist_th: Option<f64>,
    /// Speed threshold in meters per sample.
    #[arg(long, global = true, help_heading = "Encoding")]
    pub speed_th: Option<f64>,
    /// Side threshold (sine of the angle to the connecting line).
    #[arg(long, global = true, help_heading = "Encoding")]
    pub side_th: Option<f64>,
    /// Angle-constraint threshold in degrees.
    #[arg(long, global = true, help_heading = "Encoding")]
    pub angle_f_deg: Option<f64>,
    #[arg(long, global = true, value_enum, help_heading = "Encoding")]
    pub mode: Option<Mode>,
    #[arg(long, global = true, value_enum, help_heading = "Encoding")]
    pub policy: Option<Policy>,
    /// Leave tuples of undefined frames out of entropy histograms.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true", help_heading = "Encoding")]
    pub exclude_undefined: Option<bool>,

    /// Sweep grid start, degrees.
    #[arg(long, global = true, help_heading = "Analysis")]
    pub from_deg: Option<f64>,
    /// Sweep grid end (inclusive), degrees.
    #[arg(long, global = true, help_heading = "Analysis")]
    pub to_deg: Option<f64>,
    #[arg(long, global = true, help_heading = "Analysis")]
    pub step_deg: Option<f64>,
    /// Angle-histogram bin width, degrees.
    #[arg(long, global = true, help_heading = "Analysis")]
    pub bin_width_deg: Option<f64>,

    #[arg(long, global = true, help_heading = "Synthesis")]
    pub seed: Option<u64>,
    /// Number of consecutive seeds to generate.
    #[arg(long, global = true, help_heading = "Synthesis")]
    pub pairs: Option<u64>,
    #[arg(long, global = true, help_heading = "Synthesis")]
    pub samples: Option<usize>,
    /// Meters per sample.
    #[arg(long, global = true, help_heading = "Synthesis")]
    pub speed: Option<f64>,
    /// Std-dev of per-sample turns, radians.
    #[arg(long, global = true, help_heading = "Synthesis")]
    pub turn_rate: Option<f64>,
    /// Follower position noise std-dev, meters.
    #[arg(long, global = true, help_heading = "Synthesis")]
    pub noise: Option<f64>,
    /// Follower delay in samples.
    #[arg(long, global = true, help_heading = "Synthesis")]
    pub delay: Option<usize>,
    /// Follower offset `x,y,z` in meters.
    #[arg(long, global = true, value_delimiter = ',', num_args = 3, allow_negative_numbers = true, help_heading = "Synthesis")]
    pub offset: Option<Vec<f64>>,
    #[arg(long, global = true, help_heading = "Synthesis")]
    pub max_pitch_deg: Option<f64>,

    #[arg(long, global = true, value_enum, help_heading = "Output")]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true, help_heading = "Output")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, help_heading = "Output")]
    pub output_dir: Option<PathBuf>,
}

macro_rules! merge_fields {
    ($flags:ident, $file:ident; $($f:ident),*) => {
        RunConfig { $($f: $flags.$f.or($file.$f),)* input: if $flags.input.is_empty() { $file.input } else { $flags.input } }
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(QtcError::from)?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {}", path.display(), e.message())))
    }

    /// Field-wise merge; values set in `self` take precedence.
    pub fn over(self, file: RunConfig) -> RunConfig {
        let flags = self;
        merge_fields!(flags, file;
            k, l, object, manifest, dt, col_id, col_t, col_x, col_y, col_z, start, count, centered,
            variant, th_deg, dist_th, speed_th, side_th, angle_f_deg, mode, policy, exclude_undefined,
            from_deg, to_deg, step_deg, bin_width_deg,
            seed, pairs, samples, speed, turn_rate, noise, delay, offset, max_pitch_deg,
            format, output, output_dir)
    }

    pub fn columns(&self) -> ColumnMap {
        let d = ColumnMap::default();
        ColumnMap {
            id: self.col_id.clone().unwrap_or(d.id),
            t: self.col_t.clone().unwrap_or(d.t),
            x: self.col_x.clone().unwrap_or(d.x),
            y: self.col_y.clone().unwrap_or(d.y),
            z: self.col_z.clone().unwrap_or(d.z),
        }
    }

    pub fn th(&self) -> f64 {
        self.th_deg.unwrap_or(DEFAULT_TH_DEG).to_radians()
    }

    pub fn thresholds(&self) -> Thresholds {
        let d = Thresholds::default();
        Thresholds {
            dist: self.dist_th.unwrap_or(d.dist),
            speed: self.speed_th.unwrap_or(d.speed),
            side: self.side_th.unwrap_or(d.side),
            angle_f: self.angle_f_deg.map_or(d.angle_f, f64::to_radians),
            tait_bryan: self.th(),
        }
    }

    pub fn transform_mode(&self) -> TransformMode {
        match self.mode {
            Some(Mode::BodyFrame) => TransformMode::BodyFrame,
            _ => TransformMode::WorldFrame,
        }
    }

    pub fn frame_options(&self) -> FrameOptions {
        let policy = match self.policy {
            Some(Policy::MarkUndefined) => DegeneracyPolicy::MarkUndefined,
            _ => DegeneracyPolicy::CarryForward,
        };
        FrameOptions { policy, ..FrameOptions::default() }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    /// Radians, `from..=to` in `step` increments.
    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        let (from, to, step) = (self.from_deg.unwrap_or(0.0), self.to_deg.unwrap_or(40.0), self.step_deg.unwrap_or(2.0));
        if !(step > 0.0) || !(to >= from) || from < 0.0 {
            return Err(QtcError::InvalidArgument(format!("bad grid {from}..{to} step {step}")).into());
        }
        let n = ((to - from) / step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| (from + i as f64 * step).to_radians()).collect())
    }

    pub fn synth(&self, seed: u64) -> Result<SynthConfig, CliError> {
        let d = SynthConfig::default();
        let offset = match &self.offset {
            None => d.follower_offset,
            Some(v) if v.len() == 3 => Vec3::new(v[0], v[1], v[2]),
            Some(v) => return Err(QtcError::InvalidArgument(format!("offset needs 3 values, got {}", v.len())).into()),
        };
        let cfg = SynthConfig {
            n_samples: self.samples.unwrap_or(d.n_samples),
            dt: self.dt.unwrap_or(d.dt),
            speed: self.speed.unwrap_or(d.speed),
            leader_turn_rate: self.turn_rate.unwrap_or(d.leader_turn_rate),
            follower_delay: self.delay.unwrap_or(d.follower_delay),
            follower_noise: self.noise.unwrap_or(d.follower_noise),
            follower_offset: offset,
            max_pitch: self.max_pitch_deg.map_or(d.max_pitch, f64::to_radians),
            rng_seed: seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
