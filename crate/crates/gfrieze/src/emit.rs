//! Deterministic emitters for frieze values and verification reports.
//!
//! All outputs are byte-identical for identical inputs. The grid layouts
//! (text and TikZ) index rows by diagonal length `2..=m/2` and columns by
//! rotation; the Möbius seam of the AR quiver is shown by repeating the first
//! column at the end, flagged as a seam. The JSON document lists every object
//! exactly once, sorted by endpoints, with values in the canonical Laurent
//! grammar, so reloading it reproduces the value table exactly.

use crate::ccmap::{CCContext, FriezeReport};
use crate::polygon::Diagonal;
use serde_json::json;
use std::fmt::Write as _;

/// Rows of the grid layout: `(length, cells)`, where each cell is an object
/// and the final cell repeats the first one as the Möbius seam.
fn grid_rows(ctx: &CCContext) -> Vec<(u32, Vec<(Diagonal, bool)>)> {
    let model = ctx.model();
    let m = model.size();
    let mut rows = Vec::new();
    for len in 2..=(m / 2) {
        let count = if 2 * len == m { m / 2 } else { m };
        let mut cells: Vec<(Diagonal, bool)> = (1..=count)
            .map(|i| {
                let d = model
                    .diagonal(i as i64, (i + len) as i64)
                    .expect("length-bounded arcs are proper");
                (d, false)
            })
            .collect();
        let seam = cells[0].0;
        cells.push((seam, true));
        rows.push((len, cells));
    }
    rows
}

/// Plain-text value grid.
pub fn emit_text(ctx: &CCContext, report: &FriezeReport) -> String {
    let mut out = String::new();
    let model = ctx.model();
    let _ = writeln!(
        out,
        "generalised frieze on the {}-gon (mode: {})",
        model.size(),
        ctx.mode()
    );
    let _ = writeln!(
        out,
        "R = {}  T = {}",
        set_text(ctx.r_objects()),
        set_text(ctx.t_objects())
    );
    let _ = writeln!(out);
    for (len, cells) in grid_rows(ctx) {
        let mut line = format!("len {len}: ");
        for (d, seam) in cells {
            let _ = write!(line, " {}={}", d, ctx.rho(d));
            if seam {
                line.push_str(" (seam)");
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    let _ = writeln!(out);
    let ones = report.defect_one_ends();
    let _ = writeln!(
        out,
        "frieze check: {} ({} of {} meshes have defect 1)",
        if report.pass { "pass" } else { "FAIL" },
        ones.len(),
        report.meshes.len()
    );
    out
}

fn set_text(objs: &[Diagonal]) -> String {
    let inner: Vec<String> = objs.iter().map(|d| d.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

/// Compact JSON document with the value table, the grid (seam column flagged)
/// and the verification outcome.
pub fn emit_json(ctx: &CCContext, report: &FriezeReport) -> String {
    let objects: Vec<_> = ctx
        .values()
        .map(|(d, v)| json!({"object": d.to_string(), "value": v.to_string()}))
        .collect();
    let grid: Vec<_> = grid_rows(ctx)
        .into_iter()
        .map(|(len, cells)| {
            let row: Vec<_> = cells
                .into_iter()
                .map(|(d, seam)| json!({"object": d.to_string(), "seam": seam}))
                .collect();
            json!({"length": len, "cells": row})
        })
        .collect();
    let defect_meshes: Vec<String> = report
        .defect_one_ends()
        .iter()
        .map(|d| d.to_string())
        .collect();
    let pairs = |objs: &[Diagonal]| -> Vec<[u32; 2]> {
        objs.iter()
            .map(|d| {
                let (i, j) = d.endpoints();
                [i, j]
            })
            .collect()
    };
    json!({
        "polygon_size": ctx.model().size(),
        "mode": ctx.mode().to_string(),
        "variables": ctx.var_table().names(),
        "R": pairs(ctx.r_objects()),
        "T": pairs(ctx.t_objects()),
        "objects": objects,
        "grid": grid,
        "defect_meshes": defect_meshes,
        "pass": report.pass,
    })
    .to_string()
}

/// Standalone TikZ picture of the value grid.
pub fn emit_tikz(ctx: &CCContext) -> String {
    let mut out = String::new();
    out.push_str("\\documentclass[tikz,border=4pt]{standalone}\n");
    out.push_str("\\begin{document}\n");
    out.push_str("\\begin{tikzpicture}[x=2.4cm,y=1.5cm]\n");
    for (len, cells) in grid_rows(ctx) {
        let y = -(len as i64 - 2);
        for (col, (d, seam)) in cells.iter().enumerate() {
            let style = if *seam { "gray" } else { "black" };
            let _ = writeln!(
                out,
                "  \\node[{style}] at ({col},{y}) {{${}$}};",
                ctx.rho(*d).latex()
            );
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out.push_str("\\end{document}\n");
    out
}

/// GraphViz digraph of the AR quiver: one node per object, one edge per mesh
/// arrow, labelled with the frieze values.
pub fn emit_dot(ctx: &CCContext) -> String {
    let mut out = String::new();
    out.push_str("digraph ar_quiver {\n  rankdir=LR;\n");
    for (d, v) in ctx.values() {
        let _ = writeln!(out, "  \"{d}\" [label=\"{d}\\n{v}\"];");
    }
    for (b, c) in ctx.engine().mesh_arrows() {
        let _ = writeln!(out, "  \"{b}\" -> \"{c}\";");
    }
    out.push_str("}\n");
    out
}

/// Per-mesh verification report.
pub fn emit_report(ctx: &CCContext, report: &FriezeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "frieze verification on the {}-gon (mode: {})",
        ctx.model().size(),
        ctx.mode()
    );
    for v in &report.meshes {
        let middles = if v.middles.is_empty() {
            "0".to_string()
        } else {
            v.middles
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" (+) ")
        };
        let _ = writeln!(
            out,
            "mesh {} -> {} -> {}: defect = {}, class = {}, {}",
            v.start,
            middles,
            v.end,
            v.defect,
            v.class,
            if v.agrees { "ok" } else { "MISMATCH" }
        );
    }
    let ones = report.defect_one_ends();
    let _ = writeln!(
        out,
        "result: {} ({} defect-1 meshes, {} split)",
        if report.pass { "pass" } else { "FAIL" },
        ones.len(),
        report.meshes.len() - ones.len()
    );
    out
}
