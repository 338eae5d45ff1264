//! Plain-text and SVG pictures of condition sets in the (i,j) plane.
//!
//! Both renderers draw the same scene: i runs to the right, j upward, sets
//! are layered in their given order (later sets overwrite on overlap), and
//! the row j = n-1 is marked because several criteria treat it specially.
//! The SVG uses shapes only, no text elements, so its bytes are stable.

use crate::criteria::ConditionSet;

const GLYPHS: &[u8] = b"ox*+#@%&=~";
const COLORS: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn extents(sets: &[ConditionSet], n: usize) -> (u32, u32) {
    let mut i_max = (n as u32).saturating_sub(2);
    let mut j_max = (2 * n as u32).saturating_sub(3);
    for s in sets {
        for p in &s.points {
            i_max = i_max.max(p.i);
            j_max = j_max.max(p.j);
        }
    }
    (i_max, j_max)
}

/// Character diagram with one glyph per set and a legend underneath. Cells
/// on the marked row j = n-1 show '-' when empty.
pub fn ascii_diagram(sets: &[ConditionSet], n: usize) -> String {
    let (i_max, j_max) = extents(sets, n);
    let marked = (n - 1) as u32;
    let mut out = String::new();
    for jj in (0..=j_max).rev() {
        out.push_str(&format!("{jj:>2} | "));
        for ii in 0..=i_max {
            let mut cell = if jj == marked { '-' } else { '.' };
            for (idx, s) in sets.iter().enumerate() {
                if s.points
                    .iter()
                    .any(|p| p.i == ii && p.j == jj)
                {
                    cell = GLYPHS[idx % GLYPHS.len()] as char;
                }
            }
            out.push(cell);
            if ii < i_max {
                out.push(' ');
            }
        }
        out.push('\n');
    }
    out.push_str("     ");
    out.push_str(
        &(0..=i_max)
            .map(|ii| ((b'0' + (ii % 10) as u8) as char).to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push_str("  (i)\n");
    for (idx, s) in sets.iter().enumerate() {
        out.push_str(&format!(
            "  {} {}\n",
            GLYPHS[idx % GLYPHS.len()] as char,
            s.name
        ));
    }
    out.push_str(&format!("  - empty cell on the marked row j = {marked}\n"));
    out
}

/// SVG rendering: a light grid, a dashed line on the marked row j = n-1,
/// axis strokes with tick marks, and one filled circle per point, colored
/// per set. Deliberately free of `<text>` so output is byte-stable and
/// independent of font availability; pair it with the listing or the ascii
/// form when labels are needed.
pub fn svg_diagram(sets: &[ConditionSet], n: usize) -> String {
    let (i_max, j_max) = extents(sets, n);
    let cell = 26u32;
    let margin = 40u32;
    let width = 2 * margin + (i_max + 1) * cell;
    let height = 2 * margin + (j_max + 1) * cell;
    let x = |ii: u32| margin + ii * cell + cell / 2;
    let y = |jj: u32| margin + (j_max - jj) * cell + cell / 2;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>\n"
    ));
    // grid
    for jj in 0..=j_max {
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            x(0) - cell / 2,
            y(jj),
            x(i_max) + cell / 2,
            y(jj)
        ));
    }
    for ii in 0..=i_max {
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            x(ii),
            y(j_max) - cell / 2,
            x(ii),
            y(0) + cell / 2
        ));
    }
    // marked row j = n-1
    let marked = (n - 1) as u32;
    if marked <= j_max {
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#555555\" \
             stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n",
            x(0) - cell / 2,
            y(marked),
            x(i_max) + cell / 2,
            y(marked)
        ));
    }
    // axes with ticks
    let ax = x(0) - cell / 2 - 4;
    let ay = y(0) + cell / 2 + 4;
    out.push_str(&format!(
        "<line x1=\"{ax}\" y1=\"{}\" x2=\"{ax}\" y2=\"{ay}\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
        y(j_max) - cell / 2
    ));
    out.push_str(&format!(
        "<line x1=\"{ax}\" y1=\"{ay}\" x2=\"{}\" y2=\"{ay}\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
        x(i_max) + cell / 2
    ));
    for ii in 0..=i_max {
        out.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{ay}\" x2=\"{0}\" y2=\"{1}\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
            x(ii),
            ay + 5
        ));
    }
    for jj in 0..=j_max {
        out.push_str(&format!(
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{ax}\" y2=\"{0}\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
            y(jj),
            ax - 5
        ));
    }
    // points, one circle each, later sets drawn on top
    for (idx, s) in sets.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        for p in &s.points {
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"7\" fill=\"{color}\"/>\n",
                x(p.i),
                y(p.j)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{main_component_sets, segment, SegmentFamily};

    #[test]
    fn ascii_golden_for_one_segment() {
        let a0 = segment(SegmentFamily::A, 0, 4).unwrap();
        // points (0,5) and (1,4) on a 3-wide, j<=5 grid with row 3 marked
        let got = ascii_diagram(&[a0], 4);
        let want = " 5 | o . .
 4 | . o .
 3 | - - -
 2 | . . .
 1 | . . .
 0 | . . .
     0 1 2  (i)
  o A_0
  - empty cell on the marked row j = 3
";
        assert_eq!(got, want);
    }

    #[test]
    fn ascii_layers_every_set() {
        let sets = main_component_sets(5, 1).unwrap();
        let art = ascii_diagram(&sets, 5);
        // each set's glyph shows up in the grid itself, not just the legend
        let grid = art.split("  (i)").next().unwrap();
        for (idx, _) in sets.iter().enumerate() {
            let glyph = GLYPHS[idx % GLYPHS.len()] as char;
            assert!(grid.contains(glyph), "missing glyph {glyph}");
        }
        // anchor point (2,4) sits on the marked row
        assert!(art.lines().any(|l| l.starts_with(" 4 |") && l.contains('-')));
    }

    #[test]
    fn svg_is_textless_and_stable() {
        let sets = main_component_sets(4, 0).unwrap();
        let a = svg_diagram(&sets, 4);
        let b = svg_diagram(&sets, 4);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert!(!a.contains("<text"));
        assert!(a.contains("stroke-dasharray"));
        let circles = a.matches("<circle").count();
        let points: usize = sets.iter().map(|s| s.points.len()).sum();
        assert_eq!(circles, points);
    }
}
