//! Qualitative trajectory calculus for pairs of moving point objects in
//! two and three dimensions.
//!
//! A pair of synchronized trajectories is turned into a sequence of
//! tuples over `{-, 0, +}`. The planar variants (`B1`, `B2`, `C1`, `C2`)
//! use distance, speed, side and angle constraints. The 3D variant keeps
//! the distance, speed and angle constraints and adds three symbols from
//! the yaw, pitch and roll of the rotation that maps one object's discrete
//! Frenet-Serret frame onto the other's.
//!
//! ```
//! use qtc3d::geometry::Vec3;
//! use qtc3d::qtc::{encode, EncodeConfig, Variant};
//! use qtc3d::trajectory::{Trajectory, TrajectoryPair};
//!
//! let k = Trajectory::from_positions(
//!     "k",
//!     &[Vec3::new(0.0, 0.0, 0.0), Vec3::new(0.5, -0.2, 0.0), Vec3::new(1.0, -0.4, 0.0)],
//!     0.0,
//!     0.2,
//! )?;
//! let l = Trajectory::from_positions(
//!     "l",
//!     &[Vec3::new(5.0, 0.0, 0.0), Vec3::new(6.0, -1.0, 0.0), Vec3::new(7.0, -2.0, 0.0)],
//!     0.0,
//!     0.2,
//! )?;
//! let pair = TrajectoryPair::new(k, l)?;
//! let cfg = EncodeConfig { variant: Variant::C2, ..EncodeConfig::default() };
//! let seq = encode(&pair, &cfg)?;
//! assert_eq!(seq.tuples[0].symbol_string(), "-+-+--");
//! # Ok::<(), qtc3d::QtcError>(())
//! ```

pub mod analysis;
pub mod error;
pub mod frenet;
pub mod geometry;
pub mod qtc;
pub mod trajectory;

pub use error::{ErrorKind, QtcError, Result};
