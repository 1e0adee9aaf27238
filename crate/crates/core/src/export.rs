//! Text renderings of grid diagrams: Graphviz DOT, SVG and TikZ.
//!
//! Vertices sit on integer grid points, `x` growing to the right and `y`
//! downwards. ε-arcs are drawn dotted. JSON is [`GridDiagram::to_json`].

use std::fmt::Write;

use crate::diagram::{GridDiagram, Orientation};
use crate::reversing::TileType;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Svg,
    Tikz,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            _ => Err(crate::Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn render(g: &GridDiagram, format: Format) -> String {
    match format {
        Format::Json => g.to_json(),
        Format::Dot => to_dot(g),
        Format::Svg => to_svg(g),
        Format::Tikz => to_tikz(g),
    }
}

fn label_text(label: Option<usize>) -> String {
    label.map_or_else(|| "ε".to_string(), |i| format!("s{i}"))
}

pub fn to_dot(g: &GridDiagram) -> String {
    let mut out = String::from("digraph reversing {\n  node [shape=point];\n");
    for (k, v) in g.vertices.iter().enumerate() {
        // neato honours pinned positions; y is flipped so the diagram reads downwards
        writeln!(out, "  v{k} [pos=\"{},{}!\"];", v.x, -(v.y as i64)).unwrap();
    }
    for e in &g.edges {
        let style = if e.orientation == Orientation::Epsilon {
            ", style=dotted"
        } else {
            ""
        };
        writeln!(
            out,
            "  v{} -> v{} [label=\"{}\"{style}];",
            e.from,
            e.to,
            label_text(e.label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

const CELL: f64 = 60.0;
const MARGIN: f64 = 30.0;

fn px(c: usize) -> f64 {
    MARGIN + c as f64 * CELL
}

pub fn to_svg(g: &GridDiagram) -> String {
    let width = g.vertices.iter().map(|v| v.x).max().unwrap_or(0);
    let height = g.vertices.iter().map(|v| v.y).max().unwrap_or(0);
    let (w, h) = (px(width) + MARGIN, px(height) + MARGIN);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    for e in &g.edges {
        let (a, b) = (g.vertices[e.from], g.vertices[e.to]);
        let (x1, y1, x2, y2) = (px(a.x), px(a.y), px(b.x), px(b.y));
        let dash = if e.orientation == Orientation::Epsilon {
            r#" stroke-dasharray="2,3""#
        } else {
            ""
        };
        writeln!(
            out,
            r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"{dash}/>"#
        )
        .unwrap();
        if let Some(i) = e.label {
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let (dx, dy) = if e.orientation == Orientation::Horizontal {
                (0.0, -4.0)
            } else {
                (4.0, 4.0)
            };
            writeln!(out, r#"  <text x="{}" y="{}">{i}</text>"#, mx + dx, my + dy).unwrap();
        }
    }
    for t in g.tiles.iter().filter(|t| t.kind.is_nontrivial()) {
        let corner = g.vertices[g.edges[t.left].from];
        let far = g.vertices[g.edges[*t.right.last().expect("nontrivial tiles have a right side")].to];
        let (cx, cy) = ((px(corner.x) + px(far.x)) / 2.0, (px(corner.y) + px(far.y)) / 2.0);
        writeln!(
            out,
            r##"  <text x="{cx}" y="{cy}" fill="#888" text-anchor="middle">{}</text>"##,
            t.kind
        )
        .unwrap();
    }
    for v in &g.vertices {
        writeln!(out, r#"  <circle cx="{}" cy="{}" r="2"/>"#, px(v.x), px(v.y)).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn to_tikz(g: &GridDiagram) -> String {
    let mut out = String::from("\\begin{tikzpicture}[yscale=-1,>=stealth]\n");
    for e in &g.edges {
        let (a, b) = (g.vertices[e.from], g.vertices[e.to]);
        match e.label {
            Some(i) => {
                let side = if e.orientation == Orientation::Horizontal {
                    "above"
                } else {
                    "right"
                };
                writeln!(
                    out,
                    "  \\draw[->] ({},{}) -- ({},{}) node[midway,{side}] {{$s_{{{i}}}$}};",
                    a.x, a.y, b.x, b.y
                )
                .unwrap();
            }
            None => writeln!(out, "  \\draw[dotted] ({},{}) -- ({},{});", a.x, a.y, b.x, b.y).unwrap(),
        }
    }
    for t in g
        .tiles
        .iter()
        .filter(|t| matches!(t.kind, TileType::IPrime | TileType::IDblPrime))
    {
        let corner = g.vertices[g.edges[t.left].from];
        let mark = if t.kind == TileType::IPrime { "I'" } else { "I''" };
        writeln!(out, "  \\node[gray] at ({}.5,{}.5) {{{mark}}};", corner.x, corner.y).unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::reversing_diagram;
    use crate::Word;

    fn hexagon() -> GridDiagram {
        reversing_diagram(&Word::parse(3, "1.2.1").unwrap(), &Word::parse(3, "2.1.2").unwrap()).unwrap()
    }

    #[test]
    fn dot_lists_every_edge() {
        let g = hexagon();
        let dot = to_dot(&g);
        assert_eq!(dot.matches("->").count(), g.edges.len());
        assert_eq!(dot.matches("style=dotted").count(), 4);
    }

    #[test]
    fn svg_is_well_formed() {
        let svg = to_svg(&hexagon());
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("stroke-dasharray").count(), 4);
        assert_eq!(svg.matches(">I</text>").count(), 1);
    }

    #[test]
    fn tikz_and_format_names() {
        let tikz = to_tikz(&hexagon());
        assert_eq!(tikz.matches("\\draw[dotted]").count(), 4);
        assert_eq!("svg".parse::<Format>().unwrap(), Format::Svg);
        assert!("png".parse::<Format>().is_err());
    }
}
