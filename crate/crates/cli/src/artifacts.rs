//! Trajectories, existence summaries and limit reports, and how they hit the disk.

use std::path::Path;

use hyperflow::ball::ball_projection;
use hyperflow::flow::{existence_window, hyperbolic_flow, TimeBound};
use hyperflow::limits::{classify_limits, limit_report, BackwardLimit, ForwardLimit};
use hyperflow::{Frame, IsoDescriptor, Vector};
use rayon::prelude::*;
use serde::Serialize;

use crate::scenario::ResolvedGrid;
use crate::CliError;

/// Position of one sample at one time, in the hyperboloid and in the ball.
pub struct Row {
    pub sample: usize,
    pub t: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

pub fn trajectories(d: &IsoDescriptor, frame: &Frame, points: &[Vector], times: &[f64]) -> Result<Vec<Row>, CliError> {
    let per_sample = points
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            times
                .iter()
                .map(|&t| {
                    let f = hyperbolic_flow(d, x, t)?;
                    let y = ball_projection(frame, d.r(), f.vector())?;
                    Ok(Row { sample: i, t, x: f.into_vector().into_coords(), y: y.coords().to_vec() })
                })
                .collect::<hyperflow::Result<Vec<_>>>()
        })
        .collect::<hyperflow::Result<Vec<_>>>()
        .map_err(|e| CliError::Invalid(format!("flow evaluation failed: {e}")))?;
    Ok(per_sample.into_iter().flatten().collect())
}

fn io(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Writes `sample_id,t,<prefix>_1,…` with one row per (sample, time).
pub fn write_csv(path: &Path, prefix: &str, rows: &[Row], ball: bool) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io(path, e))?;
    let width = rows.first().map_or(0, |r| if ball { r.y.len() } else { r.x.len() });
    let mut header = vec!["sample_id".to_string(), "t".to_string()];
    header.extend((1..=width).map(|i| format!("{prefix}_{i}")));
    w.write_record(&header).map_err(|e| io(path, e))?;
    for r in rows {
        let coords = if ball { &r.y } else { &r.x };
        let mut rec = vec![r.sample.to_string(), r.t.to_string()];
        rec.extend(coords.iter().map(f64::to_string));
        w.write_record(&rec).map_err(|e| io(path, e))?;
    }
    w.flush().map_err(|e| io(path, e))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| io(path, e))
}

fn bound(b: TimeBound<f64>) -> Option<f64> {
    b.finite()
}

/// Existence window of the descriptor; `null` stands for an unbounded time.
#[derive(Debug, Serialize)]
pub struct WindowSummary {
    pub n: usize,
    pub m: usize,
    pub t_prime: Option<f64>,
    pub t_dprime: Option<f64>,
    pub t: Option<f64>,
    pub t_alpha: Option<f64>,
    pub alpha_chain: usize,
    pub lorentz_lower: Option<f64>,
    pub grid: ResolvedGrid,
}

pub fn window_summary(d: &IsoDescriptor, grid: &ResolvedGrid) -> WindowSummary {
    let w = existence_window(d);
    WindowSummary {
        n: d.n(),
        m: d.m(),
        t_prime: bound(w.t_prime),
        t_dprime: bound(w.t_dprime),
        t: bound(w.t),
        t_alpha: w.t_alpha,
        alpha_chain: w.alpha_chain,
        lorentz_lower: bound(w.lorentz_lower),
        grid: grid.clone(),
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ForwardJson {
    Stationary,
    FocalCollapse { time: f64, points: Vec<Vec<f64>> },
    TotallyGeodesic { points: Vec<Vec<f64>> },
    IdealPoint { point: Vec<f64> },
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BackwardJson {
    Stationary,
    /// Samples of the limit on the boundary of the standard ball.
    IdealSubmanifold { dim: usize, points: Vec<Vec<f64>>, frame: Vec<Vec<f64>> },
}

#[derive(Debug, Serialize)]
pub struct LimitsJson {
    pub collapse_time: Option<f64>,
    pub forward: ForwardJson,
    pub backward: BackwardJson,
}

fn coords(v: &[Vector]) -> Vec<Vec<f64>> {
    v.iter().map(|x| x.coords().to_vec()).collect()
}

pub fn limits(d: &IsoDescriptor, points: &[Vector]) -> Result<LimitsJson, CliError> {
    let report = limit_report(d, points).map_err(|e| CliError::Invalid(format!("limit analysis failed: {e}")))?;
    let forward = match report.forward {
        ForwardLimit::Stationary => ForwardJson::Stationary,
        ForwardLimit::FocalCollapse { time, samples } => ForwardJson::FocalCollapse { time, points: coords(&samples) },
        ForwardLimit::TotallyGeodesic { samples } => ForwardJson::TotallyGeodesic { points: coords(&samples) },
        ForwardLimit::IdealPoint(p) => ForwardJson::IdealPoint { point: p.into_coords() },
    };
    let backward = match report.backward {
        BackwardLimit::Stationary => BackwardJson::Stationary,
        BackwardLimit::IdealSubmanifold { samples, dim, frame } => BackwardJson::IdealSubmanifold {
            dim,
            points: samples.into_iter().map(|p| p.into_coords()).collect(),
            frame: coords(frame.vectors()),
        },
    };
    Ok(LimitsJson { collapse_time: bound(classify_limits(d).collapse_time), forward, backward })
}
