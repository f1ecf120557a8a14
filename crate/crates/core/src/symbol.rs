//! Text forms of extended multi-segments: a parseable brace form
//! `{([A,B];l,s),...}@name` and the pretty symbol-matrix grid with column
//! headers from B to A.

use std::fmt::Write as _;

use crate::ems::{Block, ExtendedMultiSegment, ExtendedSegment};
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::label::{CuspLabel, Duality, GroupKind, GroupType};

/// Canonical parseable form, one `{...}@rho` group per block. Labels other
/// than one-dimensional orthogonal ones carry a `:dim:duality` suffix.
pub fn to_brace_string(ems: &ExtendedMultiSegment) -> String {
    let mut out = String::new();
    let (kind, size) = match ems.group.kind {
        GroupKind::Sp => ("Sp", 2 * ems.group.rank as i64),
        GroupKind::OddSO => ("SO", 2 * ems.group.rank as i64 + 1),
    };
    let _ = write!(out, "{kind}{size} ", );
    if ems.blocks().is_empty() {
        out.push_str("{}");
        return out;
    }
    for (i, (rho, rows)) in ems.blocks().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push('{');
        for (j, r) in rows.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(
                out,
                "([{},{}];{},{})",
                r.seg_a,
                r.seg_b,
                r.l,
                if r.eta >= 0 { '+' } else { '-' }
            );
        }
        out.push_str("}@");
        out.push_str(&rho.name);
        if rho.dim != 1 || rho.duality != Duality::Orthogonal {
            let d = match rho.duality {
                Duality::Orthogonal => 'o',
                Duality::Symplectic => 's',
                Duality::NonSelfDual => 'n',
            };
            let _ = write!(out, ":{}:{}", rho.dim, d);
        }
    }
    out
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(Error::Parse { pos: self.pos, msg: format!("expected `{c}`") })
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if pred(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.text[start..self.pos]
    }

    fn half(&mut self) -> Result<HalfInt> {
        self.skip_ws();
        let s = self.take_while(|c| c.is_ascii_digit() || c == '-' || c == '/');
        s.parse()
            .map_err(|msg| Error::Parse { pos: self.pos, msg })
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let s = self.take_while(|c| c.is_ascii_digit() || c == '-');
        s.parse()
            .map_err(|_| Error::Parse { pos: self.pos, msg: "expected an integer".into() })
    }
}

/// Parse the brace form. The leading group token (`Sp11`, `SO30`) is
/// optional; without it the group is inferred from the total dimension,
/// preferring the kind that fits (odd dimension: Sp; even: odd SO).
pub fn parse_symbol(text: &str) -> Result<ExtendedMultiSegment> {
    let mut cur = Cursor { text, pos: 0 };
    cur.skip_ws();
    let mut group: Option<(GroupKind, i64)> = None;
    if cur.peek() != Some('{') {
        let word = cur.take_while(|c| c.is_ascii_alphanumeric());
        let (kind, digits) = if let Some(d) = word.strip_prefix("Sp") {
            (GroupKind::Sp, d)
        } else if let Some(d) = word.strip_prefix("SO") {
            (GroupKind::OddSO, d)
        } else {
            return Err(Error::Parse { pos: 0, msg: format!("unknown group token `{word}`") });
        };
        let size: i64 = digits
            .parse()
            .map_err(|_| Error::Parse { pos: cur.pos, msg: "bad group size".into() })?;
        // the token carries the group size: Sp(2n) or SO(2n+1)
        let dual = match kind {
            GroupKind::Sp if size % 2 == 0 => size + 1,
            GroupKind::OddSO if size % 2 == 1 => size - 1,
            _ => {
                return Err(Error::Parse {
                    pos: cur.pos,
                    msg: format!("no group of kind {kind:?} has size {size}"),
                })
            }
        };
        group = Some((kind, dual));
    }
    let mut blocks: Vec<(CuspLabel, Block)> = Vec::new();
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
        cur.eat('{')?;
        let mut rows: Block = Vec::new();
        loop {
            cur.skip_ws();
            if cur.peek() == Some('}') {
                break;
            }
            cur.eat('(')?;
            cur.skip_ws();
            cur.eat('[')?;
            let a = cur.half()?;
            cur.skip_ws();
            cur.eat(',')?;
            let b = cur.half()?;
            cur.skip_ws();
            cur.eat(']')?;
            cur.skip_ws();
            cur.eat(';')?;
            let l = cur.int()?;
            cur.skip_ws();
            cur.eat(',')?;
            cur.skip_ws();
            let eta = match cur.peek() {
                Some('+') => 1,
                Some('-') => -1,
                _ => {
                    return Err(Error::Parse { pos: cur.pos, msg: "expected a sign".into() })
                }
            };
            cur.pos += 1;
            cur.skip_ws();
            cur.eat(')')?;
            rows.push(ExtendedSegment::new(a, b, l, eta));
            cur.skip_ws();
            if cur.peek() == Some(',') {
                cur.pos += 1;
            }
        }
        cur.eat('}')?;
        cur.eat('@')?;
        let name = cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '^');
        if name.is_empty() {
            return Err(Error::Parse { pos: cur.pos, msg: "expected a label name".into() });
        }
        let mut dim = 1u32;
        let mut duality = Duality::Orthogonal;
        if cur.peek() == Some(':') {
            cur.pos += 1;
            dim = cur.int()? as u32;
            cur.eat(':')?;
            duality = match cur.peek() {
                Some('o') => Duality::Orthogonal,
                Some('s') => Duality::Symplectic,
                Some('n') => Duality::NonSelfDual,
                _ => {
                    return Err(Error::Parse { pos: cur.pos, msg: "expected o, s or n".into() })
                }
            };
            cur.pos += 1;
        }
        blocks.push((CuspLabel::new(name, dim, duality), rows));
    }
    let dim: i64 = blocks
        .iter()
        .map(|(rho, rows)| {
            rows.iter().map(|r| rho.dim as i64 * r.dim_a() * r.dim_b()).sum::<i64>()
        })
        .sum();
    let group = match group {
        Some((kind, n)) => {
            let g = GroupType::of_dual_dim(kind, n)?;
            if n != dim {
                return Err(Error::invalid(format!(
                    "declared dual dimension {n} but the rows sum to {dim}"
                )));
            }
            g
        }
        None => {
            let kind = if dim % 2 == 1 { GroupKind::Sp } else { GroupKind::OddSO };
            GroupType::of_dual_dim(kind, dim)?
        }
    };
    let ems = ExtendedMultiSegment::new(group, blocks)?;
    Ok(ems)
}

/// The symbol-matrix rendering with one column per exponent from the least B
/// to the greatest A, using ◁ ⊕ ⊖ ▷ (or <, +, -, > with `ascii`).
pub fn to_grid_string(ems: &ExtendedMultiSegment, ascii: bool) -> String {
    let (tri_l, plus, minus, tri_r) = if ascii {
        ("<", "+", "-", ">")
    } else {
        ("◁", "⊕", "⊖", "▷")
    };
    let mut out = String::new();
    for (rho, rows) in ems.blocks() {
        let min_b = rows.iter().map(|r| r.seg_b).min().unwrap();
        let max_a = rows.iter().map(|r| r.seg_a).max().unwrap();
        let mut cols: Vec<HalfInt> = Vec::new();
        let mut c = min_b;
        while c <= max_a {
            cols.push(c);
            c += HalfInt::ONE;
        }
        let headers: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
        let width = headers.iter().map(|h| h.len()).max().unwrap_or(1).max(2);
        let _ = write!(out, "@{}\n ", rho.name);
        for h in &headers {
            let _ = write!(out, " {h:>width$}");
        }
        out.push('\n');
        for r in rows {
            out.push_str("  ");
            for (ci, c) in cols.iter().enumerate() {
                if ci > 0 {
                    out.push(' ');
                }
                let cell = if *c < r.seg_b || *c > r.seg_a {
                    " ".repeat(width)
                } else {
                    let offset = (*c - r.seg_b).as_int();
                    let from_top = (r.seg_a - *c).as_int();
                    let glyph = if offset < r.l {
                        tri_l
                    } else if from_top < r.l {
                        tri_r
                    } else {
                        // alternating circles starting from η at B + l
                        let parity = (offset - r.l) % 2;
                        let sign = if parity == 0 { r.eta } else { -r.eta };
                        if sign >= 0 {
                            plus
                        } else {
                            minus
                        }
                    };
                    format!("{glyph:>width$}")
                };
                out.push_str(&cell);
            }
            out.push('\n');
        }
    }
    if ems.blocks().is_empty() {
        out.push_str("{}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ems::row;

    #[test]
    fn brace_round_trip() {
        // the Sp34 example symbol
        let e = parse_symbol("{([3,0];1,+),([3,2];1,+),([3,3];0,-)}@rho").unwrap();
        assert_eq!(e.group.dual_dim(), 35);
        let text = to_brace_string(&e);
        assert_eq!(text, "Sp34 {([3,0];1,+),([3,2];1,+),([3,3];0,-)}@rho");
        let back = parse_symbol(&text).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        let err = parse_symbol("{([3,0];1,@)}@rho").unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert!(pos > 0),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_symbol("Sp10 {([3,0];1,+)}@rho").is_err()); // bad dimension
    }

    #[test]
    fn grid_rendering_of_example_5_3() {
        let e = ExtendedMultiSegment::new(
            GroupType::new(GroupKind::Sp, 5),
            vec![(
                CuspLabel::orth("rho"),
                vec![row(3, -3, 3, 1), row(1, -1, 1, -1), row(0, 0, 0, -1)],
            )],
        )
        .unwrap();
        let grid = to_grid_string(&e, true);
        let lines: Vec<&str> = grid.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[1].contains("-3"));
        // first row: three hooks, a plus, three closing hooks
        let body: String = lines[2].split_whitespace().collect();
        assert_eq!(body, "<<<+>>>");
        let body: String = lines[4].split_whitespace().collect();
        assert_eq!(body, "-");
    }
}
