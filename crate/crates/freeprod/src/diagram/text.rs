//! Line-based interchange format.
//!
//! ```text
//! diagram ell 3 vertices 9 edges 10 faces 2
//! vertex 0 f
//! edge 0 1 0
//! face 0 class 0 dist 0 ori + vertices 0 1 2 3 4 5 edges 0 1 2 3 4 5
//! relator 0 1:t1 2:t1 1:t2 2:t1
//! ```
//!
//! Edges list the central then the factor endpoint. `relator c w` assigns
//! the word `w` to class `c`. Diagrams are written in canonical form, so
//! isomorphic diagrams serialize identically.

use std::collections::HashMap;

use crate::factor::{FreeProduct, FreeProductWord};

use super::{AbstractDiagram, Decoration, DiagramError, Face, Orientation, VertexKind};

fn fmt_err(msg: impl Into<String>) -> DiagramError {
    DiagramError::Format(msg.into())
}

impl AbstractDiagram {
    /// Canonical text form, with one `relator` line per class when
    /// `relators` assigns a word to each class.
    pub fn to_text(&self, relators: Option<&[FreeProductWord]>) -> String {
        let (c, order) = self.canonical_form_with_order();
        let mut out = format!("diagram ell {} vertices {} edges {} faces {}\n", c.ell(), c.vertex_count(), c.edge_count(), c.area());
        for (v, k) in c.kinds().iter().enumerate() {
            out.push_str(&format!("vertex {v} {}\n", k.tag()));
        }
        for (e, (a, b)) in c.edges().iter().enumerate() {
            out.push_str(&format!("edge {e} {a} {b}\n"));
        }
        for (f, face) in c.faces().iter().enumerate() {
            let vs: Vec<String> = face.vertices.iter().map(ToString::to_string).collect();
            let es: Vec<String> = face.edges.iter().map(ToString::to_string).collect();
            out.push_str(&format!("face {f} class {} dist {} ori {} vertices {} edges {}\n", c.classes()[f], face.distinguished, face.orientation.tag(), vs.join(" "), es.join(" ")));
        }
        if let Some(words) = relators {
            let mut seen = vec![false; c.class_count()];
            for (f, &orig) in order.iter().enumerate() {
                let cls = c.classes()[f];
                if !seen[cls] {
                    seen[cls] = true;
                    if let Some(w) = words.get(self.classes()[orig]) {
                        out.push_str(&format!("relator {cls} {w}\n"));
                    }
                }
            }
        }
        out
    }

    /// Parse the text form; the relator list is empty when no `relator`
    /// lines are present.
    pub fn parse_text(s: &str) -> Result<(AbstractDiagram, Vec<FreeProductWord>), DiagramError> {
        let mut ell = None;
        let mut kinds = Vec::new();
        let mut edges = Vec::new();
        let mut faces = Vec::new();
        let mut classes = Vec::new();
        let mut relators: HashMap<usize, FreeProductWord> = HashMap::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |i: usize| -> Result<usize, DiagramError> { toks.get(i).ok_or_else(|| fmt_err(format!("short line: {line}")))?.parse().map_err(|_| fmt_err(format!("bad number in: {line}"))) };
            match toks[0] {
                "diagram" => ell = Some(num(2)?),
                "vertex" => kinds.push(match toks.get(2) {
                    Some(&"c") => VertexKind::Central,
                    Some(&"f") => VertexKind::Factor,
                    _ => return Err(fmt_err(format!("bad vertex kind: {line}"))),
                }),
                "edge" => edges.push((num(2)?, num(3)?)),
                "face" => {
                    let ori = match toks.get(7) {
                        Some(&"+") => Orientation::Plus,
                        Some(&"-") => Orientation::Minus,
                        _ => return Err(fmt_err(format!("bad orientation: {line}"))),
                    };
                    let vpos = toks.iter().position(|&t| t == "vertices").ok_or_else(|| fmt_err("face without vertices"))?;
                    let epos = toks.iter().position(|&t| t == "edges").ok_or_else(|| fmt_err("face without edges"))?;
                    let ids = |a: usize, b: usize| toks[a..b].iter().map(|t| t.parse::<usize>().map_err(|_| fmt_err(format!("bad id in: {line}")))).collect::<Result<Vec<_>, _>>();
                    let vertices = ids(vpos + 1, epos)?;
                    let es = ids(epos + 1, toks.len())?;
                    classes.push(num(3)?);
                    faces.push(Face { vertices, edges: es, distinguished: num(5)?, orientation: ori });
                }
                "relator" => {
                    let c = num(1)?;
                    let rest = line.split_whitespace().skip(2).collect::<Vec<_>>().join(" ");
                    relators.insert(c, FreeProductWord::parse(&rest).map_err(|e| fmt_err(e.to_string()))?);
                }
                other => return Err(fmt_err(format!("unknown record {other}"))),
            }
        }
        let d = AbstractDiagram::new(ell.ok_or_else(|| fmt_err("missing diagram header"))?, kinds, edges, faces, classes)?;
        if relators.is_empty() {
            return Ok((d, Vec::new()));
        }
        let words = (0..d.class_count()).map(|c| relators.remove(&c).ok_or_else(|| fmt_err(format!("no relator for class {c}")))).collect::<Result<Vec<_>, _>>()?;
        Ok((d, words))
    }
}

impl Decoration {
    /// Decoration assigning `relators[c]` to class `c`.
    pub fn from_words(d: &AbstractDiagram, product: &FreeProduct, relators: &[FreeProductWord]) -> Result<Self, DiagramError> {
        let assign: Vec<usize> = (0..relators.len()).collect();
        Decoration::from_assignment(d, product, relators, &assign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{full_code, glue_two};
    use crate::factor::FactorGroup;

    #[test]
    fn round_trip_and_canonical() {
        let d = glue_two(3, 1, 1, 2).unwrap().with_labels(&[2, 0], &[Orientation::Minus, Orientation::Plus], &[1, 0]).unwrap();
        let t = d.to_text(None);
        let (back, words) = AbstractDiagram::parse_text(&t).unwrap();
        assert!(words.is_empty());
        assert_eq!(full_code(&back), full_code(&d));
        let r = d.restart_face(1, 2, true).unwrap().relabel(&(0..d.vertex_count()).rev().collect::<Vec<_>>(), &(0..d.edge_count()).collect::<Vec<_>>(), &[1, 0]).unwrap();
        assert_eq!(r.to_text(None), t);
    }

    #[test]
    fn decoration_survives() {
        let p = FreeProduct::new(vec![FactorGroup::cyclic(3, "a"), FactorGroup::cyclic(3, "b")]);
        let w1 = FreeProductWord::parse("1:t1 2:t1 1:t1 2:t2").unwrap();
        let w2 = FreeProductWord::parse("1:t2 2:t1 1:t1 2:t1").unwrap();
        let d = glue_two(4, 0, 1, 1).unwrap().with_labels(&[1, 3], &[Orientation::Plus, Orientation::Minus], &[0, 1]).unwrap();
        let words = vec![w1, w2];
        let t = d.to_text(Some(&words));
        let (back, got) = AbstractDiagram::parse_text(&t).unwrap();
        let dec = Decoration::from_words(&back, &p, &got).unwrap();
        assert_eq!(full_code(&back), full_code(&d));
        for f in 0..back.area() {
            assert_eq!(dec.read_face(&back, &p, f), got[back.classes()[f]]);
        }
        let mut a = got.clone();
        let mut b = words.clone();
        a.sort_by_key(ToString::to_string);
        b.sort_by_key(ToString::to_string);
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        assert!(AbstractDiagram::parse_text("diagram ell 2\nvertex 0 q\n").is_err());
        assert!(AbstractDiagram::parse_text("face 0 class 0 dist 0 ori + vertices edges\n").is_err());
    }
}
