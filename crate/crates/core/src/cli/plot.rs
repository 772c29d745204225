//! Data behind `simplex-plot`: SVG for three vertices, CSV for any.

use std::f64::consts::PI;
use std::fmt::Write;

use super::CliError;
use crate::accumulation::{acc2_scan, special_eigenvectors, AccError};
use crate::quiver_core::DimVector;
use crate::roots::{enumerate_real_schur_roots, normalize};
use crate::QuiverContext;

/// Number of directions used to sample the conic.
const CONIC_SAMPLES: usize = 512;
const SIDE: f64 = 520.0;
const MARGIN: f64 = 40.0;

pub(super) struct PlotData {
    n: usize,
    /// Connected pieces of `q = 0` inside `Δ(1)`; empty unless `n = 3`.
    conic: Vec<Vec<Vec<f64>>>,
    roots: Vec<(DimVector, Vec<f64>)>,
    /// Label and coordinates.
    acc: Vec<(&'static str, Vec<f64>)>,
}

impl PlotData {
    pub(super) fn collect(ctx: &QuiverContext, height: u64) -> Result<Self, CliError> {
        let roots = enumerate_real_schur_roots(ctx, height)?
            .into_iter()
            .map(|d| {
                let r = normalize(&d).expect("roots are positive").to_f64();
                (d, r)
            })
            .collect();
        let mut acc = Vec::new();
        match special_eigenvectors(ctx) {
            Ok(e) if !e.euclidean_degenerate => {
                acc.push(("y_minus", e.y_minus.to_f64()));
                acc.push(("y_plus", e.y_plus.to_f64()));
            }
            Ok(_) | Err(AccError::DynkinInput | AccError::Disconnected) => {}
            Err(e) => return Err(e.into()),
        }
        for e in acc2_scan(ctx, height)? {
            acc.push(("acc2", e.ray.coords));
        }
        let conic = if ctx.n() == 3 {
            conic_pieces(ctx)
        } else {
            Vec::new()
        };
        Ok(PlotData {
            n: ctx.n(),
            conic,
            roots,
            acc,
        })
    }

    pub(super) fn to_csv(&self) -> String {
        let mut out = String::from("kind,label");
        for i in 1..=self.n {
            let _ = write!(out, ",y{i}");
        }
        out.push('\n');
        let mut row = |kind: &str, label: &str, v: &[f64]| {
            let _ = write!(out, "{kind},{label}");
            for x in v {
                let _ = write!(out, ",{x:.9}");
            }
            out.push('\n');
        };
        for (k, piece) in self.conic.iter().enumerate() {
            for p in piece {
                row("conic", &k.to_string(), p);
            }
        }
        for (d, r) in &self.roots {
            let label: Vec<String> = d.entries().iter().map(|x| x.to_string()).collect();
            row("root", &label.join(";"), r);
        }
        for (label, r) in &self.acc {
            row("acc", label, r);
        }
        out
    }

    pub(super) fn to_svg(&self) -> String {
        let h = SIDE * 3f64.sqrt() / 2.0;
        let (w, ht) = (SIDE + 2.0 * MARGIN, h + 2.0 * MARGIN);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{ht:.0}" viewBox="0 0 {w:.0} {ht:.0}">"#
        );
        let corners = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]].map(|c| project(&c));
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1"/>"#,
            corners
                .iter()
                .map(|(x, y)| format!("{x:.2},{y:.2}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
        let offsets = [(-16.0, 16.0), (8.0, 16.0), (-4.0, -8.0)];
        for (i, ((x, y), (dx, dy))) in corners.iter().zip(offsets).enumerate() {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">{}</text>"#,
                x + dx,
                y + dy,
                i + 1
            );
        }
        for piece in &self.conic {
            let pts: Vec<String> = piece
                .iter()
                .map(|p| {
                    let (x, y) = project(p);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1.2"/>"#,
                pts.join(" ")
            );
        }
        for (d, r) in &self.roots {
            let (x, y) = project(r);
            let _ = writeln!(
                s,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="black"><title>{d}</title></circle>"#
            );
        }
        for (label, r) in &self.acc {
            let (x, y) = project(r);
            let c = 4.0;
            let _ = writeln!(
                s,
                r#"<g stroke="crimson" stroke-width="1.5"><title>{label}</title><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"#,
                x - c,
                y - c,
                x + c,
                y + c,
                x - c,
                y + c,
                x + c,
                y - c
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Barycentric coordinates to the plane: vertex 1 bottom left, 2 bottom
/// right, 3 on top.
fn project(p: &[f64]) -> (f64, f64) {
    let h = SIDE * 3f64.sqrt() / 2.0;
    let base = MARGIN + h;
    let x = MARGIN + p[1] * SIDE + p[2] * SIDE / 2.0;
    let y = base - p[2] * h;
    (x, y)
}

/// Intersections of `q = 0` with rays from the barycenter in
/// [`CONIC_SAMPLES`] directions, split into pieces inside the simplex.
fn conic_pieces(ctx: &QuiverContext) -> Vec<Vec<Vec<f64>>> {
    let e = ctx.forms().euler_matrix().to_f64();
    let q = |v: &[f64]| -> f64 {
        (0..3)
            .map(|i| (0..3).map(|j| v[i] * e[i][j] * v[j]).sum::<f64>())
            .sum()
    };
    let pair = |u: &[f64], v: &[f64]| -> f64 {
        (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| u[i] * (e[i][j] + e[j][i]) * v[j])
                    .sum::<f64>()
            })
            .sum()
    };
    let c = [1.0 / 3.0; 3];
    let ea = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let eb = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
    let mut branches: [Vec<Option<Vec<f64>>>; 2] = [Vec::new(), Vec::new()];
    for k in 0..CONIC_SAMPLES {
        let th = 2.0 * PI * k as f64 / CONIC_SAMPLES as f64;
        let u: Vec<f64> = (0..3)
            .map(|i| th.cos() * ea[i] + th.sin() * eb[i])
            .collect();
        let (a2, a1, a0) = (q(&u), pair(&c, &u), q(&c));
        let mut rs: Vec<f64> = if a2.abs() < 1e-14 {
            if a1.abs() < 1e-14 {
                Vec::new()
            } else {
                vec![-a0 / a1]
            }
        } else {
            let disc = a1 * a1 - 4.0 * a2 * a0;
            if disc < 0.0 {
                Vec::new()
            } else {
                let sq = disc.sqrt();
                vec![(-a1 - sq) / (2.0 * a2), (-a1 + sq) / (2.0 * a2)]
            }
        };
        rs.retain(|r| *r >= 0.0);
        rs.sort_by(|a, b| a.total_cmp(b));
        for (b, branch) in branches.iter_mut().enumerate() {
            let p = rs
                .get(b)
                .map(|r| (0..3).map(|i| c[i] + r * u[i]).collect::<Vec<f64>>());
            branch.push(p.filter(|p| p.iter().all(|x| *x >= -1e-12)));
        }
    }
    let mut pieces = Vec::new();
    for branch in branches {
        let mut cur: Vec<Vec<f64>> = Vec::new();
        for p in branch {
            match p {
                Some(p) => cur.push(p),
                None if cur.len() > 1 => pieces.push(std::mem::take(&mut cur)),
                None => cur.clear(),
            }
        }
        if cur.len() > 1 {
            pieces.push(cur);
        }
    }
    pieces
}
