//! Per-iteration trace records as newline-delimited JSON.

use std::io::{self, Write};

use ellipsoid_core::{EllipsoidState, SymmetricMatrix, TraceRecord, TraceSink, Vector};
use serde::{Deserialize, Serialize};

/// One line of a trace file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceLine {
    pub iter: usize,
    pub violated_index: Option<usize>,
    pub center: Vec<f64>,
    pub log_volume: f64,
    pub cut_quadratic_form: Option<f64>,
}

impl From<&TraceRecord> for TraceLine {
    fn from(r: &TraceRecord) -> Self {
        TraceLine {
            iter: r.iteration,
            violated_index: r.violated_index,
            center: r.center.to_vec(),
            log_volume: r.log_volume,
            cut_quadratic_form: r.cut_quadratic_form,
        }
    }
}

pub fn write_trace<W: Write>(records: &[TraceRecord], mut out: W) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, &TraceLine::from(r))?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Collects records and, optionally, the ellipsoid each one describes.
#[derive(Debug, Default)]
pub struct Recorder {
    pub records: Vec<TraceRecord>,
    pub shapes: Vec<(Vector, SymmetricMatrix)>,
    keep_shapes: bool,
}

impl Recorder {
    pub fn new(keep_shapes: bool) -> Self {
        Recorder { keep_shapes, ..Default::default() }
    }
}

impl TraceSink for Recorder {
    fn record(&mut self, record: TraceRecord, state: &EllipsoidState) {
        if self.keep_shapes {
            self.shapes.push((state.center().clone(), state.shape().clone()));
        }
        self.records.push(record);
    }
}
