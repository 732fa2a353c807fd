//! Problem files, trace output, SVG plots and the `ellipsoid` command-line
//! driver built on [`ellipsoid_core`].

pub mod app;
pub mod problem;
pub mod svg;
pub mod trace;

pub use app::{run, ExitStatus};
pub use problem::{parse_problem, ProblemConstraint, ProblemError, ProblemFile, Sense};
pub use svg::{ellipse_axes, emit_svg_trace, EllipseAxes, SvgError};
pub use trace::{write_trace, Recorder, TraceLine};
