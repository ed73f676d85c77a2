//! Young-diagram drawings: ASCII rows for line partitions, SVG 1.1 and TikZ
//! for line and plane partitions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use partition_transport::measures::SupportDecomposition;
use partition_transport::partitions::{Cell, MultiPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
    Tikz,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Ascii => "ascii",
            Format::Svg => "svg",
            Format::Tikz => "tikz",
        }
    }
}

/// Coloring of a diagram against its σ-image.
#[derive(Debug, Clone)]
pub struct Highlight {
    pub split: SupportDecomposition,
    /// Source/target pairs of an optimal plan that actually move mass.
    pub arrows: Vec<(Cell, Cell)>,
}

#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub format: Format,
    pub highlight: Option<Highlight>,
    /// Edge length of a cell: pixels for SVG, centimetres for TikZ.
    pub cube_size: f64,
}

impl RenderSpec {
    pub fn new(format: Format) -> Self {
        let cube_size = if format == Format::Tikz { 0.5 } else { 24.0 };
        RenderSpec {
            format,
            highlight: None,
            cube_size,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Plain,
    Common,
    Moved,
    Target,
}

impl Role {
    fn class(self) -> &'static str {
        match self {
            Role::Plain => "cell",
            Role::Common => "cell common",
            Role::Moved => "cell moved",
            Role::Target => "cell target",
        }
    }

    /// Top, first side and second side shades; the first entry doubles as the flat fill.
    fn svg_fill(self) -> [&'static str; 3] {
        match self {
            Role::Plain => ["#d9d9d9", "#b3b3b3", "#8c8c8c"],
            Role::Common => ["#c9a0dc", "#a070c0", "#7a4a9a"],
            Role::Moved => ["#f6c08a", "#e0954a", "#b86e25"],
            Role::Target => ["none", "none", "none"],
        }
    }

    fn tikz_fill(self) -> [&'static str; 3] {
        match self {
            Role::Plain => ["gray!20", "gray!40", "gray!60"],
            Role::Common => ["violet!30", "violet!50", "violet!70"],
            Role::Moved => ["orange!30", "orange!50", "orange!70"],
            Role::Target => ["none", "none", "none"],
        }
    }
}

fn roles(p: &MultiPartition, highlight: Option<&Highlight>) -> Vec<(Cell, Role)> {
    let cells = p.to_cells();
    let Some(h) = highlight else {
        return cells.iter().map(|c| (c.clone(), Role::Plain)).collect();
    };
    let mut out: Vec<(Cell, Role)> = cells
        .iter()
        .map(|c| {
            let role = if h.split.common.contains(c) {
                Role::Common
            } else {
                Role::Moved
            };
            (c.clone(), role)
        })
        .collect();
    if p.m() == 1 {
        out.extend(
            h.split
                .target_only
                .iter()
                .map(|c| (c.clone(), Role::Target)),
        );
    }
    out
}

pub fn render(p: &MultiPartition, spec: &RenderSpec) -> Result<String, String> {
    match (spec.format, p.m()) {
        (Format::Ascii, 1) => Ok(ascii(p, spec.highlight.as_ref())),
        (Format::Svg, 1) => Ok(svg_flat(p, spec)),
        (Format::Svg, 2) => Ok(svg_cubes(p, spec)),
        (Format::Tikz, 1) => Ok(tikz_flat(p, spec)),
        (Format::Tikz, 2) => Ok(tikz_cubes(p, spec)),
        (format, m) => Err(format!(
            "{} rendering is not available for m = {m} (ascii needs m = 1, svg and tikz need m <= 2)",
            format.as_str()
        )),
    }
}

/// One row per part, longest first; moved cells print as `o` under a highlight.
fn ascii(p: &MultiPartition, highlight: Option<&Highlight>) -> String {
    let moved: BTreeSet<&Cell> = highlight
        .map(|h| h.split.source_only.iter().collect())
        .unwrap_or_default();
    let mut out = String::new();
    for (index, part) in p.entries() {
        for alpha in 0..part {
            let cell = Cell::new(vec![alpha, index[0] as u32]);
            out.push(if moved.contains(&cell) { 'o' } else { '#' });
        }
        out.push('\n');
    }
    out
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn svg_open(out: &mut String, width: f64, height: f64, arrows: bool) {
    let (w, h) = (fmt_num(width), fmt_num(height));
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    if arrows {
        out.push_str(
            "  <defs>\n    <marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">\n      <path d=\"M0,0 L8,4 L0,8 z\" fill=\"#202020\"/>\n    </marker>\n  </defs>\n",
        );
    }
}

/// Line partitions: coordinate 0 runs right, coordinate 1 runs up.
fn svg_flat(p: &MultiPartition, spec: &RenderSpec) -> String {
    let s = spec.cube_size;
    let cells = roles(p, spec.highlight.as_ref());
    let cols = cells
        .iter()
        .map(|(c, _)| c.coords()[0] + 1)
        .max()
        .unwrap_or(1) as f64;
    let rows = cells
        .iter()
        .map(|(c, _)| c.coords()[1] + 1)
        .max()
        .unwrap_or(1) as f64;
    let margin = s / 2.0;
    let corner = |c: &Cell| {
        (
            margin + c.coords()[0] as f64 * s,
            margin + (rows - 1.0 - c.coords()[1] as f64) * s,
        )
    };
    let arrows = spec.highlight.as_ref().map_or(&[][..], |h| &h.arrows[..]);
    let mut out = String::new();
    svg_open(
        &mut out,
        cols * s + 2.0 * margin,
        rows * s + 2.0 * margin,
        !arrows.is_empty(),
    );
    for (cell, role) in &cells {
        let (x, y) = corner(cell);
        let stroke = if *role == Role::Target {
            " stroke-dasharray=\"4 3\""
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  <rect class=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#202020\"{stroke}/>",
            role.class(),
            fmt_num(x),
            fmt_num(y),
            fmt_num(s),
            fmt_num(s),
            role.svg_fill()[0],
        );
    }
    for (from, to) in arrows {
        let (x1, y1) = corner(from);
        let (x2, y2) = corner(to);
        let h = s / 2.0;
        let _ = writeln!(
            out,
            "  <line class=\"arrow\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#202020\" marker-end=\"url(#head)\"/>",
            fmt_num(x1 + h),
            fmt_num(y1 + h),
            fmt_num(x2 + h),
            fmt_num(y2 + h),
        );
    }
    out.push_str("</svg>\n");
    out
}

fn tikz_flat(p: &MultiPartition, spec: &RenderSpec) -> String {
    let cells = roles(p, spec.highlight.as_ref());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "\\begin{{tikzpicture}}[x={}cm,y={}cm]",
        fmt_num(spec.cube_size),
        fmt_num(spec.cube_size)
    );
    for (cell, role) in &cells {
        let (x, y) = (cell.coords()[0], cell.coords()[1]);
        let style = if *role == Role::Target {
            "draw,dashed".to_string()
        } else {
            format!("fill={},draw", role.tikz_fill()[0])
        };
        let _ = writeln!(out, "  \\path[{style}] ({x},{y}) rectangle ++(1,1);");
    }
    if let Some(h) = &spec.highlight {
        for (from, to) in &h.arrows {
            let _ = writeln!(
                out,
                "  \\draw[->,thick] ({}.5,{}.5) -- ({}.5,{}.5);",
                from.coords()[0],
                from.coords()[1],
                to.coords()[0],
                to.coords()[1]
            );
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

const COS30: f64 = 0.866_025_403_784_438_6;

/// Isometric image of a lattice point, in cube units with the screen y axis
/// pointing down. Coordinate 0 is vertical; the view ray is `(1, 1, 1)`.
fn project(p: [f64; 3]) -> (f64, f64) {
    ((p[2] - p[1]) * COS30, (p[1] + p[2]) * 0.5 - p[0])
}

/// Visible faces of the unit cube at `cell`: top, `+1` side, `+2` side.
fn faces(cell: &Cell) -> [[(f64, f64); 4]; 3] {
    let c = cell.coords();
    let at = |d: [u32; 3]| {
        project([
            (c[0] + d[0]) as f64,
            (c[1] + d[1]) as f64,
            (c[2] + d[2]) as f64,
        ])
    };
    [
        [at([1, 0, 0]), at([1, 1, 0]), at([1, 1, 1]), at([1, 0, 1])],
        [at([0, 1, 0]), at([1, 1, 0]), at([1, 1, 1]), at([0, 1, 1])],
        [at([0, 0, 1]), at([1, 0, 1]), at([1, 1, 1]), at([0, 1, 1])],
    ]
}

/// Cubes in painter's order: nearer cubes have a larger coordinate sum and
/// are drawn later.
fn painter_order(mut cells: Vec<(Cell, Role)>) -> Vec<(Cell, Role)> {
    cells.sort_by(|a, b| (a.0.coordinate_sum(), &a.0).cmp(&(b.0.coordinate_sum(), &b.0)));
    cells
}

fn svg_cubes(p: &MultiPartition, spec: &RenderSpec) -> String {
    let s = spec.cube_size;
    let cells = painter_order(roles(p, spec.highlight.as_ref()));
    let polys: Vec<_> = cells.iter().map(|(c, r)| (c, *r, faces(c))).collect();
    let points = polys.iter().flat_map(|(_, _, f)| f.iter().flatten());
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in points {
        lo_x = lo_x.min(x);
        lo_y = lo_y.min(y);
        hi_x = hi_x.max(x);
        hi_y = hi_y.max(y);
    }
    let margin = s / 2.0;
    let mut out = String::new();
    svg_open(
        &mut out,
        (hi_x - lo_x) * s + 2.0 * margin,
        (hi_y - lo_y) * s + 2.0 * margin,
        false,
    );
    for (cell, role, faces) in polys {
        let _ = writeln!(out, "  <g class=\"{}\" data-cell=\"{cell}\">", role.class());
        for (face, fill) in faces.iter().zip(role.svg_fill()) {
            let pts: Vec<String> = face
                .iter()
                .map(|&(x, y)| {
                    format!(
                        "{},{}",
                        fmt_num(margin + (x - lo_x) * s),
                        fmt_num(margin + (y - lo_y) * s)
                    )
                })
                .collect();
            let _ = writeln!(
                out,
                "    <polygon points=\"{}\" fill=\"{fill}\" stroke=\"#202020\" stroke-linejoin=\"round\"/>",
                pts.join(" ")
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn tikz_cubes(p: &MultiPartition, spec: &RenderSpec) -> String {
    let cells = painter_order(roles(p, spec.highlight.as_ref()));
    let mut out = String::new();
    let _ = writeln!(
        out,
        "\\begin{{tikzpicture}}[x={}cm,y={}cm]",
        fmt_num(spec.cube_size),
        fmt_num(spec.cube_size)
    );
    for (cell, role) in &cells {
        let _ = writeln!(out, "  % cell {cell}");
        for (face, fill) in faces(cell).iter().zip(role.tikz_fill()) {
            let pts: Vec<String> = face
                .iter()
                .map(|&(x, y)| format!("({},{})", fmt_num(x), fmt_num(-y)))
                .collect();
            let _ = writeln!(
                out,
                "  \\filldraw[fill={fill}] {} -- cycle;",
                pts.join(" -- ")
            );
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}
