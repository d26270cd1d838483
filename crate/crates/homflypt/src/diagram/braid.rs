//! Closed-braid diagrams from braid words.
//!
//! The text format is `"n: i1 i2 ..."` where `n` is the strand count and
//! each letter `i` with `1 <= |i| <= n-1` is a generator, negative for the
//! inverse. Strands run in parallel and close up around the braid axis, so
//! the closure of an `n`-strand word has `s = n` Seifert circles. Strands no
//! letter touches close into trivial components.

use super::{Arc, Crossing, CrossingId, EndPoint, LinkDiagram, Sign};
use crate::{Error, Result};

/// Slot receiving the strand entering on the given side of a braid crossing,
/// with both strands oriented along the braid.
fn in_slot(sign: Sign, left: bool) -> u8 {
    match (sign, left) {
        (Sign::Positive, true) => 3,
        (Sign::Positive, false) => 0,
        (Sign::Negative, true) => 0,
        (Sign::Negative, false) => 1,
    }
}

fn out_slot(sign: Sign, left: bool) -> u8 {
    match (sign, left) {
        (Sign::Positive, true) => 2,
        (Sign::Positive, false) => 1,
        (Sign::Negative, true) => 3,
        (Sign::Negative, false) => 2,
    }
}

/// Parses a braid word and returns the diagram of its closure.
pub fn parse_braid(text: &str) -> Result<LinkDiagram> {
    let (head, tail) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse("braid word needs the form \"n: i1 i2 ...\"".into()))?;
    let strands: usize = head
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad strand count {:?}", head.trim())))?;
    if strands == 0 {
        return Err(Error::Parse("strand count must be at least 1".into()));
    }
    let mut letters = Vec::new();
    for tok in tail.split_whitespace() {
        let i: i64 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator {tok:?}")))?;
        if i == 0 || i.unsigned_abs() as usize >= strands {
            return Err(Error::Parse(format!(
                "generator {i} out of range for {strands} strands"
            )));
        }
        letters.push(i);
    }
    Ok(closure(strands, &letters))
}

/// Builds the closure diagram of a braid word given as signed generator
/// indices.
pub fn closure(strands: usize, letters: &[i64]) -> LinkDiagram {
    let mut crossings: Vec<Crossing> = Vec::with_capacity(letters.len());
    let mut arcs: Vec<Arc> = Vec::new();
    // Per position: where the strand last emerged, and where it first entered.
    let mut pending: Vec<Option<EndPoint>> = vec![None; strands];
    let mut first_in: Vec<Option<EndPoint>> = vec![None; strands];

    let wire_in = |arcs: &mut Vec<Arc>,
                       crossings: &mut Vec<Crossing>,
                       pending: &mut Vec<Option<EndPoint>>,
                       first_in: &mut Vec<Option<EndPoint>>,
                       pos: usize,
                       end: EndPoint| {
        match pending[pos] {
            Some(tail) => {
                let id = arcs.len();
                arcs.push(Arc { tail, head: end });
                crossings[tail.crossing].slots[tail.slot as usize] = id;
                crossings[end.crossing].slots[end.slot as usize] = id;
            }
            None => first_in[pos] = Some(end),
        }
    };

    for &letter in letters {
        let sign = if letter > 0 { Sign::Positive } else { Sign::Negative };
        let i = letter.unsigned_abs() as usize - 1;
        let c: CrossingId = crossings.len();
        crossings.push(Crossing { sign, slots: [usize::MAX; 4] });
        wire_in(
            &mut arcs,
            &mut crossings,
            &mut pending,
            &mut first_in,
            i,
            EndPoint::new(c, in_slot(sign, true)),
        );
        wire_in(
            &mut arcs,
            &mut crossings,
            &mut pending,
            &mut first_in,
            i + 1,
            EndPoint::new(c, in_slot(sign, false)),
        );
        pending[i] = Some(EndPoint::new(c, out_slot(sign, true)));
        pending[i + 1] = Some(EndPoint::new(c, out_slot(sign, false)));
    }

    let mut trivial = 0;
    for pos in 0..strands {
        match (pending[pos], first_in[pos]) {
            (Some(tail), Some(head)) => {
                let id = arcs.len();
                arcs.push(Arc { tail, head });
                crossings[tail.crossing].slots[tail.slot as usize] = id;
                crossings[head.crossing].slots[head.slot as usize] = id;
            }
            (None, None) => trivial += 1,
            _ => unreachable!("a touched strand has both ends"),
        }
    }

    
    LinkDiagram::new(crossings, arcs, trivial).expect("closed braids embed in the sphere")
}
