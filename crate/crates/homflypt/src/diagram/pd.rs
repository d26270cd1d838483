//! PD-code files: the JSON wire format for diagrams.
//!
//! ```json
//! {"crossings":[{"sign":1,"arcs":[0,1,2,3]}, ...],"trivial_components":0}
//! ```
//!
//! `arcs` lists the labels of the four arcs around the crossing
//! counterclockwise starting at the incoming under-strand. Every label must
//! occur exactly once at an outgoing slot and once at an incoming slot.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{slot_is_incoming, Arc, Crossing, EndPoint, LinkDiagram, Sign};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct PdCrossing {
    sign: i8,
    arcs: [u64; 4],
}

#[derive(Debug, Serialize, Deserialize)]
struct PdDocument {
    crossings: Vec<PdCrossing>,
    #[serde(default)]
    trivial_components: usize,
}

/// Parses a PD-code JSON document.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let doc: PdDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad PD json: {e}")))?;
    if doc.crossings.is_empty() && doc.trivial_components == 0 {
        return Err(Error::EmptyDiagram);
    }

    let mut tails: HashMap<u64, EndPoint> = HashMap::new();
    let mut heads: HashMap<u64, EndPoint> = HashMap::new();
    let mut order: Vec<u64> = Vec::new();
    for (ci, pc) in doc.crossings.iter().enumerate() {
        let sign = match pc.sign {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            s => return Err(Error::Parse(format!("crossing {ci}: bad sign {s}"))),
        };
        for slot in 0..4u8 {
            let label = pc.arcs[slot as usize];
            let end = EndPoint::new(ci, slot);
            let table = if slot_is_incoming(sign, slot) { &mut heads } else { &mut tails };
            if table.insert(label, end).is_some() {
                return Err(Error::Parse(format!(
                    "arc label {label} has inconsistent orientation"
                )));
            }
            if !order.contains(&label) {
                order.push(label);
            }
        }
    }
    for label in &order {
        if !tails.contains_key(label) || !heads.contains_key(label) {
            return Err(Error::Parse(format!("arc label {label} dangles")));
        }
    }

    let id_of: HashMap<u64, usize> =
        order.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let arcs: Vec<Arc> = order
        .iter()
        .map(|l| Arc { tail: tails[l], head: heads[l] })
        .collect();
    let crossings: Vec<Crossing> = doc
        .crossings
        .iter()
        .map(|pc| {
            let sign = if pc.sign == 1 { Sign::Positive } else { Sign::Negative };
            Crossing {
                sign,
                slots: core::array::from_fn(|s| id_of[&pc.arcs[s]]),
            }
        })
        .collect();
    LinkDiagram::new(crossings, arcs, doc.trivial_components)
}

/// Serializes a diagram as PD-code JSON. Arc labels are assigned densely in
/// the order slots first mention them, so the output is a deterministic
/// function of the diagram.
pub fn serialize_pd(d: &LinkDiagram) -> String {
    let mut label: HashMap<usize, u64> = HashMap::new();
    let mut next = 0u64;
    let mut crossings = Vec::new();
    for c in d.crossings() {
        let mut arcs = [0u64; 4];
        for (s, arc) in c.slots.iter().enumerate() {
            let l = *label.entry(*arc).or_insert_with(|| {
                let l = next;
                next += 1;
                l
            });
            arcs[s] = l;
        }
        crossings.push(PdCrossing {
            sign: match c.sign {
                Sign::Positive => 1,
                Sign::Negative => -1,
            },
            arcs,
        });
    }
    serde_json::to_string(&PdDocument {
        crossings,
        trivial_components: d.trivial_components(),
    })
    .expect("PD documents serialize")
}
