//! Edge-list text export of 2-complexes.
//!
//! ```text
//! # tracelab 2-complex v1
//! vertices 9
//! edge 1 0 3
//! face 1 given 1 5 -2 -7
//! ```
//!
//! Vertices are numbered from 0. Edges and faces are numbered from 1; an
//! `edge` line gives tail and head, a `face` line its provenance label and
//! attaching word as signed edge numbers.

use std::fmt::Write;

use tracelab_core::covers::TwoComplex;

pub const HEADER: &str = "# tracelab 2-complex v1";

pub fn write_complex(k: &TwoComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "vertices {}", k.vertices);
    for (i, (t, h)) in k.edges.iter().enumerate() {
        let _ = writeln!(out, "edge {} {} {}", i + 1, t, h);
    }
    for (i, f) in k.faces.iter().enumerate() {
        let _ = write!(out, "face {} {}", i + 1, f.label.name());
        for l in &f.word {
            let _ = write!(out, " {l}");
        }
        out.push('\n');
    }
    out
}
