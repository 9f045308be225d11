//! Plain PGM heightmaps of node fields and an SVG of the sensor network.

use std::collections::BTreeSet;
use std::fmt::Write;

use eulerint::sensor::{SensorNetwork, Support};
use eulerint::{to_f64, Rational};

/// Grid position of every node, from the ranks of its coordinates.
fn raster_positions(network: &SensorNetwork) -> (usize, usize, Vec<(usize, usize)>) {
    let k = network.complex();
    let coords = k.all_coords();
    let xs: BTreeSet<&Rational> = coords.iter().map(|p| &p[0]).collect();
    let ys: BTreeSet<&Rational> = coords.iter().map(|p| &p[1]).collect();
    let xs: Vec<&Rational> = xs.into_iter().collect();
    let ys: Vec<&Rational> = ys.into_iter().collect();
    let pos = coords
        .iter()
        .map(|p| {
            let i = xs.binary_search(&&p[0]).expect("present");
            let j = ys.binary_search(&&p[1]).expect("present");
            (i, ys.len() - 1 - j)
        })
        .collect();
    (xs.len(), ys.len(), pos)
}

/// `P2` image with heights scaled linearly onto `0..=255`; north is up.
pub fn pgm(values: &[Rational], network: &SensorNetwork) -> String {
    let (w, h, pos) = raster_positions(network);
    let lo = values.iter().min().map(to_f64).unwrap_or(0.0);
    let hi = values.iter().max().map(to_f64).unwrap_or(0.0);
    let mut pixels = vec![0u32; w * h];
    for (v, &(i, j)) in values.iter().zip(&pos) {
        let t = if hi > lo { (to_f64(v) - lo) / (hi - lo) } else { 0.5 };
        pixels[j * w + i] = (t * 255.0).round() as u32;
    }
    let mut out = format!("P2\n# height range {lo} to {hi}\n{w} {h}\n255\n");
    for row in pixels.chunks(w) {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Triangulation edges, target supports and nodes; hole nodes are hollow.
pub fn network_svg(network: &SensorNetwork, targets: &[Support]) -> String {
    const SIZE: f64 = 600.0;
    const PAD: f64 = 20.0;
    let (lo, hi) = network.window();
    let (x0, y0) = (to_f64(&lo[0]), to_f64(&lo[1]));
    let scale = (SIZE - 2.0 * PAD) / (to_f64(&hi[0]) - x0).max(to_f64(&hi[1]) - y0);
    let px = |x: &Rational| PAD + (to_f64(x) - x0) * scale;
    let py = |y: &Rational| SIZE - PAD - (to_f64(y) - y0) * scale;
    let k = network.complex();
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(s, r##"<g stroke="#bbbbbb" stroke-width="0.5">"##).unwrap();
    for c in k.cells_of_dim(1) {
        let v = k.cell(c).vertices();
        let (a, b) = (k.coords(v[0]), k.coords(v[1]));
        writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, px(&a[0]), py(&a[1]), px(&b[0]), py(&b[1]))
            .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r##"<g fill="#3060c0" fill-opacity="0.25" stroke="#3060c0">"##).unwrap();
    for t in targets {
        match t {
            Support::Disk { center, radius } => writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}"/>"#,
                px(&center[0]),
                py(&center[1]),
                to_f64(radius) * scale
            ),
            Support::Rect { min, max } => writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                px(&min[0]),
                py(&max[1]),
                to_f64(&(&max[0] - &min[0])) * scale,
                to_f64(&(&max[1] - &min[1])) * scale
            ),
        }
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    for v in 0..k.num_vertices() {
        let p = k.coords(v);
        let fill = if network.is_hole(v) { "none" } else { "#202020" };
        writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{fill}" stroke="#202020"/>"##, px(&p[0]), py(&p[1]))
            .unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    s
}
