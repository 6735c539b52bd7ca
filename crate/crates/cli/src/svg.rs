//! Minimal self-contained SVG writer for two-axis classification maps:
//! one colored cell per grid point, discrete color per tag.

use gslab_core::radial::ClassTag;

fn color(tag: ClassTag) -> &'static str {
    match tag {
        ClassTag::Crossing => "#d62728",
        ClassTag::PositiveMinimum => "#ff7f0e",
        ClassTag::GroundStateCandidate => "#2ca02c",
        ClassTag::BlowUp => "#9467bd",
        ClassTag::Undetermined => "#7f7f7f",
    }
}

/// Render a (len(xs) × len(ys)) tag grid; `tags` is row-major over ys then
/// xs. Axis values only label the corners; cells are equal-sized.
pub fn classification_map(
    x_name: &str,
    y_name: &str,
    xs: &[f64],
    ys: &[f64],
    tags: &[ClassTag],
) -> String {
    assert_eq!(tags.len(), xs.len() * ys.len());
    let (cell, margin, legend_h) = (14usize, 60usize, 22usize);
    let w = margin + cell * xs.len() + 20;
    let h = margin + cell * ys.len() + legend_h + 30;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         font-family=\"monospace\" font-size=\"11\">\n"
    ));
    for (j, _) in ys.iter().enumerate() {
        for (i, _) in xs.iter().enumerate() {
            let tag = tags[j * xs.len() + i];
            // y axis points up: last row at the top.
            let x = margin + i * cell;
            let y = margin + (ys.len() - 1 - j) * cell;
            out.push_str(&format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{cell}\" height=\"{cell}\" \
                 fill=\"{}\" stroke=\"white\" stroke-width=\"0.5\"/>\n",
                color(tag)
            ));
        }
    }
    let x_label_y = margin + cell * ys.len() + 14;
    out.push_str(&format!(
        "<text x=\"{margin}\" y=\"{x_label_y}\">{x_name}: {:.4} … {:.4}</text>\n",
        xs[0],
        xs[xs.len() - 1]
    ));
    out.push_str(&format!(
        "<text x=\"4\" y=\"{}\" transform=\"rotate(-90 12 {})\">{y_name}: {:.4} … {:.4}</text>\n",
        margin + cell * ys.len() / 2,
        margin + cell * ys.len() / 2,
        ys[0],
        ys[ys.len() - 1]
    ));
    let legend_y = x_label_y + 18;
    let mut lx = margin;
    for tag in [
        ClassTag::Crossing,
        ClassTag::PositiveMinimum,
        ClassTag::GroundStateCandidate,
        ClassTag::BlowUp,
        ClassTag::Undetermined,
    ] {
        out.push_str(&format!(
            "<rect x=\"{lx}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>\
             <text x=\"{}\" y=\"{}\">{tag}</text>\n",
            legend_y - 9,
            color(tag),
            lx + 13,
            legend_y
        ));
        lx += 13 + 9 * tag.to_string().len() + 10;
    }
    out.push_str("</svg>\n");
    out
}
