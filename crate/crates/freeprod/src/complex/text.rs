//! Line-oriented interchange format for polygonal and mixed complexes.
//!
//! ```text
//! COMPLEX polygonal
//! BASEPOINT 0
//! VERTICES 3
//! 0 central
//! 1 factor 1
//! 2 subdivision
//! EDGES 2
//! 0 0 1
//! 1 1 2
//! POLYGONS 1
//! 0 0 1 2 1 | 0 1 1 0 | 1:t1
//! ```
//!
//! Factors are 1-based. Mixed complexes list `id projection` per vertex,
//! tag each edge `polygonal <base edge>` or `cubical`, add a `CUBES`
//! section, a `PROJECTION` section with the geodesic choice, subdivision
//! factor and `τ`, and end with the base complex after `BASE`.

use std::fmt::Write;

use crate::factor::FreeProductWord;

use super::{ComplexError, Cube, EdgeKind, GeodesicChoice, MixedComplex, Polygon, PolygonalComplex, VertexType};
use super::CellComplex;

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn write_polygons(out: &mut String, polygons: &[Polygon]) {
    writeln!(out, "POLYGONS {}", polygons.len()).unwrap();
    for (i, p) in polygons.iter().enumerate() {
        write!(out, "{i} {} | {}", join(&p.vertices), join(&p.edges)).unwrap();
        if let Some(rot) = &p.rotation {
            write!(out, " | {}", FreeProductWord::new(rot.clone())).unwrap();
        }
        out.push('\n');
    }
}

impl PolygonalComplex {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "COMPLEX polygonal").unwrap();
        writeln!(out, "BASEPOINT {}", self.basepoint()).unwrap();
        writeln!(out, "VERTICES {}", self.vertex_count()).unwrap();
        for (i, t) in self.types().iter().enumerate() {
            match t {
                VertexType::Central => writeln!(out, "{i} central"),
                VertexType::Factor(f) => writeln!(out, "{i} factor {}", f + 1),
                VertexType::Subdivision => writeln!(out, "{i} subdivision"),
            }
            .unwrap();
        }
        writeln!(out, "EDGES {}", self.edge_count()).unwrap();
        for (i, (a, b)) in self.edge_ends().iter().enumerate() {
            writeln!(out, "{i} {a} {b}").unwrap();
        }
        write_polygons(&mut out, self.polygons());
        out
    }

    pub fn parse_text(s: &str) -> Result<Self, ComplexError> {
        let mut r = Reader::new(s);
        let x = r.polygonal()?;
        r.finish()?;
        Ok(x)
    }
}

impl MixedComplex {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "COMPLEX mixed").unwrap();
        writeln!(out, "VERTICES {}", self.vertex_count).unwrap();
        for (i, p) in self.vertex_projection.iter().enumerate() {
            writeln!(out, "{i} {p}").unwrap();
        }
        writeln!(out, "EDGES {}", self.edges.len()).unwrap();
        for (i, ((a, b), proj)) in self.edges.iter().zip(&self.edge_projection).enumerate() {
            match proj {
                Some(e) => writeln!(out, "{i} {a} {b} polygonal {e}"),
                None => writeln!(out, "{i} {a} {b} cubical"),
            }
            .unwrap();
        }
        write_polygons(&mut out, &self.polygons);
        writeln!(out, "CUBES {}", self.cubes.len()).unwrap();
        for (i, c) in self.cubes.iter().enumerate() {
            writeln!(out, "{i} {}", join(&c.vertices)).unwrap();
        }
        writeln!(out, "PROJECTION").unwrap();
        writeln!(out, "choice {}", self.choice.tag()).unwrap();
        writeln!(out, "subdivision {}", self.subdivision).unwrap();
        writeln!(out, "tau {}", self.tau).unwrap();
        writeln!(out, "BASE").unwrap();
        out.push_str(&self.base.to_text());
        out
    }

    pub fn parse_text(s: &str) -> Result<Self, ComplexError> {
        let mut r = Reader::new(s);
        r.expect_line("COMPLEX mixed")?;
        let n = r.header("VERTICES")?;
        let mut vertex_projection = Vec::with_capacity(n);
        for i in 0..n {
            let t = r.row(i)?;
            vertex_projection.push(num(t.first())?);
        }
        let m = r.header("EDGES")?;
        let mut edges = Vec::with_capacity(m);
        let mut kinds = Vec::with_capacity(m);
        let mut edge_projection = Vec::with_capacity(m);
        for i in 0..m {
            let t = r.row(i)?;
            edges.push((num(t.first())?, num(t.get(1))?));
            match t.get(2).copied() {
                Some("polygonal") => {
                    kinds.push(EdgeKind::Polygonal);
                    edge_projection.push(Some(num(t.get(3))?));
                }
                Some("cubical") => {
                    kinds.push(EdgeKind::Cubical);
                    edge_projection.push(None);
                }
                _ => return Err(bad(format!("edge {i} has no kind"))),
            }
        }
        let polygons = r.polygons()?;
        let c = r.header("CUBES")?;
        let mut cubes = Vec::with_capacity(c);
        for i in 0..c {
            let t = r.row(i)?;
            cubes.push(Cube::new(t.iter().map(|x| num(Some(x))).collect::<Result<_, _>>()?));
        }
        r.expect_line("PROJECTION")?;
        let choice = GeodesicChoice::from_tag(&r.keyed("choice")?).ok_or_else(|| bad("unknown geodesic choice"))?;
        let subdivision = num(Some(&r.keyed("subdivision")?.as_str()))?;
        let tau = num(Some(&r.keyed("tau")?.as_str()))?;
        r.expect_line("BASE")?;
        let base = r.polygonal()?;
        r.finish()?;
        let x = MixedComplex { vertex_count: n, edges, kinds, polygons, cubes, vertex_projection, edge_projection, base, choice, subdivision, tau };
        if x.vertex_projection.iter().any(|&p| p >= x.base.vertex_count()) || x.edges.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(ComplexError::OutOfRange("mixed complex ids".into()));
        }
        for (p, poly) in x.polygons.iter().enumerate() {
            super::check_cycle(&x.edges, n, p, poly)?;
        }
        Ok(x)
    }
}

fn bad(msg: impl Into<String>) -> ComplexError {
    ComplexError::Format(msg.into())
}

fn num(t: Option<&&str>) -> Result<usize, ComplexError> {
    let t = t.ok_or_else(|| bad("missing number"))?;
    t.parse().map_err(|_| bad(format!("not a number: {t}")))
}

type LineFilter<'a> = std::iter::Filter<std::str::Lines<'a>, fn(&&str) -> bool>;

struct Reader<'a> {
    lines: std::iter::Peekable<LineFilter<'a>>,
}

impl<'a> Reader<'a> {
    fn new(s: &'a str) -> Self {
        let keep: fn(&&str) -> bool = |l| !l.trim().is_empty();
        Reader { lines: s.lines().filter(keep).peekable() }
    }

    fn next(&mut self) -> Result<&'a str, ComplexError> {
        self.lines.next().map(str::trim).ok_or_else(|| bad("unexpected end of input"))
    }

    fn expect_line(&mut self, want: &str) -> Result<(), ComplexError> {
        let l = self.next()?;
        if l == want {
            Ok(())
        } else {
            Err(bad(format!("expected `{want}`, found `{l}`")))
        }
    }

    fn keyed(&mut self, key: &str) -> Result<String, ComplexError> {
        let l = self.next()?;
        match l.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.trim().to_string()),
            _ => Err(bad(format!("expected `{key}`, found `{l}`"))),
        }
    }

    fn header(&mut self, key: &str) -> Result<usize, ComplexError> {
        let v = self.keyed(key)?;
        num(Some(&v.as_str()))
    }

    /// Tokens of row `i` after its id.
    fn row(&mut self, i: usize) -> Result<Vec<&'a str>, ComplexError> {
        let l = self.next()?;
        let mut t = l.split_whitespace();
        if t.next() != Some(i.to_string().as_str()) {
            return Err(bad(format!("expected row {i}, found `{l}`")));
        }
        Ok(t.collect())
    }

    fn polygons(&mut self) -> Result<Vec<Polygon>, ComplexError> {
        let p = self.header("POLYGONS")?;
        let mut out = Vec::with_capacity(p);
        for i in 0..p {
            let l = self.next()?;
            let rest = l.strip_prefix(&i.to_string()).ok_or_else(|| bad(format!("expected polygon {i}")))?;
            let parts: Vec<&str> = rest.split('|').collect();
            if parts.len() < 2 || parts.len() > 3 {
                return Err(bad(format!("polygon {i}: expected vertices | edges [| rotation]")));
            }
            let nums = |s: &str| s.split_whitespace().map(|x| num(Some(&x))).collect::<Result<Vec<_>, _>>();
            let mut poly = Polygon::new(nums(parts[0])?, nums(parts[1])?);
            if let Some(rot) = parts.get(2) {
                poly.rotation = Some(FreeProductWord::parse(rot).map_err(|e| bad(e.to_string()))?.syllables);
            }
            out.push(poly);
        }
        Ok(out)
    }

    fn polygonal(&mut self) -> Result<PolygonalComplex, ComplexError> {
        self.expect_line("COMPLEX polygonal")?;
        let basepoint = self.header("BASEPOINT")?;
        let n = self.header("VERTICES")?;
        let mut types = Vec::with_capacity(n);
        for i in 0..n {
            let t = self.row(i)?;
            types.push(match t.as_slice() {
                ["central"] => VertexType::Central,
                ["subdivision"] => VertexType::Subdivision,
                ["factor", f] => {
                    let f = num(Some(f))?;
                    if f == 0 {
                        return Err(bad("factors are 1-based"));
                    }
                    VertexType::Factor(f - 1)
                }
                _ => return Err(bad(format!("vertex {i}: unknown type"))),
            });
        }
        let m = self.header("EDGES")?;
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let t = self.row(i)?;
            if t.len() != 2 {
                return Err(bad(format!("edge {i}: expected two endpoints")));
            }
            edges.push((num(t.first())?, num(t.get(1))?));
        }
        let polygons = self.polygons()?;
        PolygonalComplex::new(types, edges, polygons, basepoint)
    }

    fn finish(&mut self) -> Result<(), ComplexError> {
        match self.lines.next() {
            None => Ok(()),
            Some(l) => Err(bad(format!("trailing input `{l}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_mixed, Fiber};
    use super::*;
    use crate::diagram::{polygon, Decoration};
    use crate::factor::{FactorGroup, FreeProduct};

    #[test]
    fn polygonal_round_trip() {
        let x = PolygonalComplex::polygon(3);
        let s = x.to_text();
        assert_eq!(PolygonalComplex::parse_text(&s).unwrap(), x);
        let y = super::super::subdivide(&x, 2).unwrap();
        assert_eq!(PolygonalComplex::parse_text(&y.to_text()).unwrap().to_text(), y.to_text());
        assert!(PolygonalComplex::parse_text("COMPLEX polygonal\nBASEPOINT 0\nVERTICES 1\n0 weird\n").is_err());
    }

    #[test]
    fn mixed_round_trip() {
        let product = FreeProduct::new(vec![FactorGroup::free(1), FactorGroup::cyclic(3, "b")]);
        let r = FreeProductWord::parse("1:w1 2:t1 1:w1.1 2:t2").unwrap();
        let d = polygon(4);
        let dec = Decoration::from_assignment(&d, &product, &[r], &[0]).unwrap();
        let x = PolygonalComplex::from_diagram(&d, Some(&dec)).unwrap();
        let m = build_mixed(&x, &product, &[Fiber::line(3), Fiber::point(1)], GeodesicChoice::LexMin).unwrap().balanced(2).unwrap();
        let s = m.to_text();
        let back = MixedComplex::parse_text(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_text(), s);
    }
}
