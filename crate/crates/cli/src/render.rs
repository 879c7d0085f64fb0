use rsk_core::metrics::{Block, BlockKind};
use rsk_core::Partition;

/// Rows of the diagram of `lam`, one line per row. With a non-empty overlay
/// `mu`, cells of both are `#`, cells of `lam` only are `o` and cells of `mu`
/// only are `x`.
pub fn render_diagram(lam: &Partition, overlay: Option<&Partition>) -> String {
    let mu = overlay.filter(|m| !m.is_empty());
    let rows = lam.len().max(mu.map_or(0, Partition::len));
    let mut lines = Vec::with_capacity(rows);
    for i in 1..=rows {
        let l = lam.part(i);
        let m = mu.map_or(l, |m| m.part(i));
        let line: String = (1..=l.max(m))
            .map(|j| match (j <= l, j <= m) {
                (true, true) => '#',
                (true, false) => 'o',
                _ => 'x',
            })
            .collect();
        lines.push(line);
    }
    lines.join("\n")
}

pub fn block_table(blocks: &[Block]) -> String {
    let mut out = String::from("kind    rows     area  height  width\n");
    for b in blocks {
        let kind = match b.kind {
            BlockKind::Lambda => "lambda",
            BlockKind::Mu => "mu",
        };
        out.push_str(&format!(
            "{kind:<7} {:>3}-{:<3} {:>5} {:>7} {:>6}\n",
            b.first_row, b.last_row, b.area, b.height, b.width
        ));
    }
    out.trim_end().to_string()
}

pub fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}
