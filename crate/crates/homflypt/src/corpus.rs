//! Seeded diagram generators for the test suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decompose::{apply_move, artin_sites, Move, MoveScript, Side, StrandRef};
use crate::diagram::braid::closure;
use crate::diagram::{Dart, LinkDiagram};
use crate::seifert::SeifertStructure;
use crate::canonical_form;

/// Random braid closures with up to `max_strands` strands and up to
/// `max_len` crossings, mixed signs.
pub fn mixed_closures(seed: u64, count: usize) -> Vec<LinkDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let strands = rng.gen_range(2..=4usize);
            let len = rng.gen_range(1..=10usize);
            let letters: Vec<i64> = (0..len)
                .map(|_| {
                    let i = rng.gen_range(1..strands) as i64;
                    if rng.gen_bool(0.5) {
                        i
                    } else {
                        -i
                    }
                })
                .collect();
            closure(strands, &letters)
        })
        .collect()
}

/// Random positive braid closures with up to `max_len` crossings.
pub fn positive_closures(seed: u64, count: usize, max_len: usize) -> Vec<LinkDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let strands = rng.gen_range(2..=4usize);
            let len = rng.gen_range(1..=max_len);
            let letters: Vec<i64> =
                (0..len).map(|_| rng.gen_range(1..strands) as i64).collect();
            closure(strands, &letters)
        })
        .collect()
}

/// Every positive 3-strand braid word of length at most `max_len`, one
/// representative per rotation class of the word.
pub fn positive_three_strand_words(max_len: usize) -> Vec<LinkDiagram> {
    let mut reps: Vec<Vec<i64>> = Vec::new();
    for len in 0..=max_len {
        for code in 0..(1u32 << len) {
            let word: Vec<i64> = (0..len)
                .map(|k| if code >> k & 1 == 0 { 1 } else { 2 })
                .collect();
            let min_rot = (0..len.max(1))
                .map(|r| {
                    let mut w = word.clone();
                    w.rotate_left(r % len.max(1));
                    w
                })
                .min()
                .unwrap_or_default();
            if min_rot == word && !reps.contains(&word) {
                reps.push(word);
            }
        }
    }
    reps.iter().map(|w| closure(3, w)).collect()
}

fn canonical_arc(d: &LinkDiagram, arc: usize) -> usize {
    canonical_form(d)
        .arc_map
        .iter()
        .position(|&k| k == arc)
        .expect("arc is labeled")
}

fn canonical_crossing(d: &LinkDiagram, c: usize) -> usize {
    canonical_form(d)
        .crossing_map
        .iter()
        .position(|&k| k == c)
        .expect("crossing is labeled")
}

/// Candidate moves applicable to a diagram, canonically addressed.
fn move_options(d: &LinkDiagram) -> Vec<Move> {
    let mut out = Vec::new();
    if d.trivial_components() >= 2 {
        out.push(Move::Shackle {
            first: StrandRef::Trivial,
            second: StrandRef::Trivial,
            side: Side::Left,
        });
    }
    if d.trivial_components() >= 1 {
        for a in 0..d.arc_count() {
            for side in [Side::Left, Side::Right] {
                out.push(Move::Shackle {
                    first: StrandRef::Arc(canonical_arc(d, a)),
                    second: StrandRef::Trivial,
                    side,
                });
            }
        }
    }
    if d.crossing_count() > 0 {
        let s = SeifertStructure::new(d);
        let faces = d.faces();
        for face in &faces.faces {
            for &da in face {
                if !da.forward {
                    continue;
                }
                for &db in face {
                    if db.forward || s.circle_of_arc(da.arc) == s.circle_of_arc(db.arc) {
                        continue;
                    }
                    // face on the left of da and on the right of db
                    debug_assert_eq!(
                        faces.face_left_of(da),
                        faces.face_left_of(Dart { arc: db.arc, forward: false })
                    );
                    out.push(Move::Shackle {
                        first: StrandRef::Arc(canonical_arc(d, da.arc)),
                        second: StrandRef::Arc(canonical_arc(d, db.arc)),
                        side: Side::Left,
                    });
                }
            }
        }
        for c in 0..d.crossing_count() {
            out.push(Move::Double { crossing: canonical_crossing(d, c) });
        }
        for site in artin_sites(d, &s) {
            let [a, b, c] = site.crossings();
            out.push(Move::Artin {
                crossings: [
                    canonical_crossing(d, a),
                    canonical_crossing(d, b),
                    canonical_crossing(d, c),
                ],
                direction: site.direction(),
            });
        }
    }
    out
}

/// Random well-formed move scripts with their replayed diagrams; every
/// resulting diagram is positive by construction.
pub fn random_move_scripts(
    seed: u64,
    count: usize,
    max_moves: usize,
) -> Vec<(MoveScript, LinkDiagram)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let start_circles = rng.gen_range(1..=3usize);
            let mut d = LinkDiagram::new(Vec::new(), Vec::new(), start_circles).unwrap();
            let mut moves = Vec::new();
            let target = rng.gen_range(1..=max_moves);
            for step in 0..target {
                let options = move_options(&d);
                if options.is_empty() {
                    break;
                }
                let mv = options[rng.gen_range(0..options.len())].clone();
                d = apply_move(&d, &mv, step).expect("generated moves apply");
                moves.push(mv);
            }
            (MoveScript { start_circles, moves }, d)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::verify;

    #[test]
    fn corpora_are_deterministic() {
        let a = mixed_closures(7, 5);
        let b = mixed_closures(7, 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
        assert_eq!(positive_three_strand_words(3).len(), 1 + 2 + 3 + 4);
    }

    #[test]
    fn generated_scripts_replay_to_their_diagrams() {
        for (script, d) in random_move_scripts(11, 10, 6) {
            assert!(verify(&script, &d).unwrap());
            assert!(d.is_positive());
        }
    }
}
