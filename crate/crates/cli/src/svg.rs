//! SVG rendering of a planar run: the bounding circle, every constraint line
//! and one `<ellipse>` per visited ellipsoid, shaded blue to red by iteration.
//!
//! Coordinates are written in problem units inside a `scale(1,-1)` group so
//! that the y axis points up.

use std::f64::consts::FRAC_PI_4;
use std::io::{self, Write};

use ellipsoid_core::{LinearSystem, SymmetricMatrix, TraceRecord, Vector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("SVG output is only available for 2-dimensional problems (got n = {0})")]
    Dimension(usize),
    #[error("{records} trace records but {shapes} shapes")]
    LengthMismatch { records: usize, shapes: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Semi-axes and orientation of a 2-D ellipse `{x : xᵀK⁻¹x ≤ 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseAxes {
    /// Semi-axis along `angle`.
    pub rx: f64,
    pub ry: f64,
    /// Radians, in `[−π/4, π/4]`.
    pub angle: f64,
}

/// Closed-form eigendecomposition of a 2×2 shape matrix.
pub fn ellipse_axes(shape: &SymmetricMatrix) -> EllipseAxes {
    let (a, b, d) = (shape.get(0, 0), shape.get(0, 1), shape.get(1, 1));
    let mean = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let disc = half_diff.hypot(b);
    let (big, small) = (mean + disc, (mean - disc).max(0.0));
    // direction of the larger eigenvector
    let mut angle = 0.5 * (2.0 * b).atan2(a - d);
    let (mut rx, mut ry) = (big.sqrt(), small.sqrt());
    if angle > FRAC_PI_4 {
        angle -= 2.0 * FRAC_PI_4;
        std::mem::swap(&mut rx, &mut ry);
    } else if angle < -FRAC_PI_4 {
        angle += 2.0 * FRAC_PI_4;
        std::mem::swap(&mut rx, &mut ry);
    }
    EllipseAxes { rx, ry, angle }
}

/// Writes the SVG document for a 2-D run. `shapes[k]` is the ellipsoid behind `records[k]`.
pub fn emit_svg_trace<W: Write>(
    sys: &LinearSystem,
    records: &[TraceRecord],
    shapes: &[(Vector, SymmetricMatrix)],
    mut out: W,
) -> Result<(), SvgError> {
    if sys.dim() != 2 {
        return Err(SvgError::Dimension(sys.dim()));
    }
    if records.len() != shapes.len() {
        return Err(SvgError::LengthMismatch { records: records.len(), shapes: shapes.len() });
    }
    let r = sys.radius();
    let axes: Vec<EllipseAxes> = shapes.iter().map(|(_, k)| ellipse_axes(k)).collect();
    let mut extent = r;
    for ((c, _), ax) in shapes.iter().zip(&axes) {
        let reach = ax.rx.max(ax.ry);
        extent = extent.max(c[0].abs() + reach).max(c[1].abs() + reach);
    }
    let extent = 1.05 * extent;
    let stroke = extent / 300.0;

    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="600" height="600" viewBox="{} {} {} {}">"#,
        -extent,
        -extent,
        2.0 * extent,
        2.0 * extent
    )?;
    writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
        -extent,
        -extent,
        2.0 * extent,
        2.0 * extent
    )?;
    writeln!(out, r#"<g transform="scale(1,-1)" fill="none" stroke-width="{stroke}">"#)?;
    writeln!(
        out,
        r##"<circle class="bound" cx="0" cy="0" r="{r}" stroke="#888888" stroke-dasharray="{} {}"/>"##,
        4.0 * stroke,
        2.0 * stroke
    )?;

    for (i, c) in sys.constraints().iter().enumerate() {
        let a = c.normal();
        let norm2 = a.dot(a);
        let (px, py) = (a[0] * c.bound() / norm2, a[1] * c.bound() / norm2);
        let norm = norm2.sqrt();
        let (dx, dy) = (-a[1] / norm, a[0] / norm);
        let len = 4.0 * extent;
        writeln!(
            out,
            r##"<line class="constraint" data-index="{i}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#cc3333"/>"##,
            px - len * dx,
            py - len * dy,
            px + len * dx,
            py + len * dy
        )?;
    }

    let last = records.len().saturating_sub(1).max(1) as f64;
    for ((rec, (c, _)), ax) in records.iter().zip(shapes).zip(&axes) {
        let hue = 240.0 * (1.0 - rec.iteration as f64 / last);
        writeln!(
            out,
            r#"<ellipse class="iterate" data-iter="{}" cx="{}" cy="{}" rx="{}" ry="{}" transform="rotate({} {} {})" stroke="hsl({:.1},80%,45%)"><title>iteration {}, log-volume {}</title></ellipse>"#,
            rec.iteration,
            c[0],
            c[1],
            ax.rx,
            ax.ry,
            ax.angle.to_degrees(),
            c[0],
            c[1],
            hue,
            rec.iteration,
            rec.log_volume
        )?;
    }
    if let Some((c, _)) = shapes.last() {
        writeln!(
            out,
            r##"<circle class="center" cx="{}" cy="{}" r="{}" fill="#000000" stroke="none"/>"##,
            c[0],
            c[1],
            2.0 * stroke
        )?;
    }
    writeln!(out, "</g>\n</svg>")?;
    out.flush()?;
    Ok(())
}
