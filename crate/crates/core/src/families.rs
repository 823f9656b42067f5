//! Constructors for the named graph families and a small text syntax for
//! describing them.
//!
//! Labelling is deterministic: host or base vertices keep their labels
//! and gadget vertices are appended in construction order.
//!
//! `C_{s,t}` denotes a cycle `C_s` with a pendant path of `t` new
//! vertices, so it has order `s + t` and a unique leaf.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::catalog;
use crate::graph::{parse_graph6, to_graph6, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("spec syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::Invalid(msg.into())
}

/// `C_{s,t}`: cycle `0..s`, then path `s..s+t` hanging from vertex 0.
/// The leaf is `s + t - 1`.
pub fn tadpole(s: usize, t: usize) -> Result<Graph, FamilyError> {
    if s < 3 || t < 1 {
        return Err(invalid(format!("tadpole needs s >= 3 and t >= 1, got ({s}, {t})")));
    }
    let mut edges: Vec<(usize, usize)> = (0..s).map(|i| (i, (i + 1) % s)).collect();
    edges.push((0, s));
    edges.extend((s..s + t - 1).map(|i| (i, i + 1)));
    Ok(Graph::from_edges(s + t, edges)?)
}

/// `K*_{1,t}`: centre 0, support vertices `1..=t`, leaf `t + i` below
/// support vertex `i`.
pub fn subdivided_star(t: usize) -> Result<Graph, FamilyError> {
    if t < 2 {
        return Err(invalid(format!("subdivided star needs t >= 2, got {t}")));
    }
    let edges = (1..=t).flat_map(|i| [(0, i), (i, t + i)]);
    Ok(Graph::from_edges(2 * t + 1, edges.collect::<Vec<_>>())?)
}

/// A hub-family gadget: a cycle sharing a vertex with the hub, or a
/// tadpole whose leaf is the hub.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gadget {
    Cycle(usize),
    Tadpole(usize, usize),
}

impl Gadget {
    pub fn order(self) -> usize {
        match self {
            Gadget::Cycle(r) => r,
            Gadget::Tadpole(r, k) => r + k,
        }
    }

    fn check(self) -> Result<(), FamilyError> {
        let ok = match self {
            Gadget::Cycle(r) => (3..=5).contains(&r),
            Gadget::Tadpole(r, k) => (3..=5).contains(&r) && (1..=3).contains(&k),
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("gadget {self} is outside C3..C5 and C_(3..5,1..3)")))
        }
    }

    /// The gadget with its hub vertex labelled 0.
    pub fn graph(self) -> Graph {
        let mut g = Graph::empty(1);
        self.append(&mut g, 0);
        g
    }

    /// Appends the gadget to `g`, identifying its hub with `hub`.
    fn append(self, g: &mut Graph, hub: usize) {
        let base = g.order();
        let mut edges = g.edges();
        match self {
            Gadget::Cycle(r) => {
                let ring: Vec<usize> = std::iter::once(hub).chain(base..base + r - 1).collect();
                edges.extend((0..r).map(|i| (ring[i], ring[(i + 1) % r])));
                *g = Graph::from_edges(base + r - 1, edges).expect("labels in range");
            }
            Gadget::Tadpole(r, k) => {
                // hub - p1 - .. - p(k-1) - c0, cycle c0 .. c(r-1)
                let path: Vec<usize> = std::iter::once(hub).chain(base..base + k - 1).collect();
                let c0 = base + k - 1;
                edges.extend(path.windows(2).map(|w| (w[0], w[1])));
                edges.push((path[path.len() - 1], c0));
                edges.extend((0..r).map(|i| (c0 + i, c0 + (i + 1) % r)));
                *g = Graph::from_edges(base + k - 1 + r, edges).expect("labels in range");
            }
        }
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gadget::Cycle(r) => write!(f, "c{r}"),
            Gadget::Tadpole(r, k) => write!(f, "c{r}-{k}"),
        }
    }
}

/// A member of the hub family: all gadgets share hub vertex 0.
pub fn f_family(gadgets: &[Gadget]) -> Result<Graph, FamilyError> {
    if gadgets.len() < 2 {
        return Err(invalid("the hub family needs at least two gadgets"));
    }
    let mut g = Graph::empty(1);
    for &gadget in gadgets {
        gadget.check()?;
        gadget.append(&mut g, 0);
    }
    Ok(g)
}

/// Unit hung at each base vertex of an extremal graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TUnit {
    /// `C_{4,2}` with its leaf on the base vertex.
    C42,
    /// `C_{5,1}` with its leaf on the base vertex.
    C51,
}

impl TUnit {
    fn gadget(self) -> Gadget {
        match self {
            TUnit::C42 => Gadget::Tadpole(4, 2),
            TUnit::C51 => Gadget::Tadpole(5, 1),
        }
    }
}

impl fmt::Display for TUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TUnit::C42 => "4,2",
            TUnit::C51 => "5,1",
        })
    }
}

/// Identifies the leaf of a `C_{4,2}` or `C_{5,1}` with every vertex of
/// the connected base graph `f`. Order `6|f|`.
pub fn t_extremal(f: &Graph, units: &[TUnit]) -> Result<Graph, FamilyError> {
    if f.order() < 2 || !f.is_connected() {
        return Err(invalid("the base graph must be connected with at least two vertices"));
    }
    if units.len() != f.order() {
        return Err(invalid(format!("{} units given for a base graph of order {}", units.len(), f.order())));
    }
    let mut g = f.clone();
    for (x, unit) in units.iter().enumerate() {
        unit.gadget().append(&mut g, x);
    }
    Ok(g)
}

/// The vertex of `G1` joined to the clique: the common neighbour of its
/// two degree-3 vertices.
fn g1_join_vertex(g1: &Graph) -> Result<usize, FamilyError> {
    let cubic: Vec<usize> = (0..g1.order()).filter(|&v| g1.degree(v) == 3).collect();
    let [a, b] = cubic[..] else {
        return Err(invalid("catalog G1 does not have exactly two degree-3 vertices"));
    };
    (0..g1.order())
        .find(|&x| g1.has_edge(a, x) && g1.has_edge(b, x))
        .ok_or_else(|| invalid("degree-3 vertices of G1 have no common neighbour"))
}

/// `K_n` on `0..n` with a copy of `G1` joined to each clique vertex.
pub fn u_extremal(n: usize) -> Result<Graph, FamilyError> {
    if n < 2 {
        return Err(invalid(format!("the clique needs n >= 2, got {n}")));
    }
    let g1 = catalog::forbidden_graph("G1").ok_or_else(|| invalid("catalog has no G1"))?;
    let a = g1_join_vertex(g1)?;
    let mut g = Graph::complete(n);
    for b in 0..n {
        let offset = g.order();
        g = g.disjoint_union(g1).with_edge(b, offset + a)?;
    }
    Ok(g)
}

/// Graphs that can be hung off a host vertex by a single edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttachGadget {
    C4,
    C5,
    /// `C_{4,1}`; must be joined at its leaf (index 4).
    C41,
    G3,
    G4,
    G5,
}

impl AttachGadget {
    pub const ALL: [AttachGadget; 6] =
        [AttachGadget::C4, AttachGadget::C5, AttachGadget::C41, AttachGadget::G3, AttachGadget::G4, AttachGadget::G5];

    pub fn graph(self) -> Result<Graph, FamilyError> {
        let from_catalog = |name: &str| {
            catalog::forbidden_graph(name).cloned().ok_or_else(|| invalid(format!("catalog has no {name}")))
        };
        match self {
            AttachGadget::C4 => Ok(Graph::cycle(4)),
            AttachGadget::C5 => Ok(Graph::cycle(5)),
            AttachGadget::C41 => tadpole(4, 1),
            AttachGadget::G3 => from_catalog("G3"),
            AttachGadget::G4 => from_catalog("G4"),
            AttachGadget::G5 => from_catalog("G5"),
        }
    }

    fn name(self) -> &'static str {
        match self {
            AttachGadget::C4 => "C4",
            AttachGadget::C5 => "C5",
            AttachGadget::C41 => "C4,1",
            AttachGadget::G3 => "G3",
            AttachGadget::G4 => "G4",
            AttachGadget::G5 => "G5",
        }
    }
}

impl FromStr for AttachGadget {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AttachGadget::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s) || (s.eq_ignore_ascii_case("c41") && *g == AttachGadget::C41))
            .ok_or_else(|| invalid(format!("unknown attachment gadget {s:?}")))
    }
}

/// Disjoint union of `h` and the gadget plus the edge `v -- anchor`; the
/// gadget's vertices are shifted by `|h|`.
pub fn attach(h: &Graph, v: usize, gadget: AttachGadget, anchor: usize) -> Result<Graph, FamilyError> {
    h.check_vertex(v)?;
    let body = gadget.graph()?;
    if anchor >= body.order() {
        return Err(invalid(format!("anchor {anchor} out of range for {}", gadget.name())));
    }
    if gadget == AttachGadget::C41 && body.degree(anchor) != 1 {
        return Err(invalid("C4,1 must be joined at its leaf (anchor 4)"));
    }
    Ok(h.disjoint_union(&body).with_edge(v, h.order() + anchor)?)
}

/// Declarative description of a constructed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle(usize),
    Tadpole(usize, usize),
    SubdividedStar(usize),
    FFamily(Vec<Gadget>),
    TExtremal { base: Base, units: Vec<TUnit> },
    UExtremal(usize),
    Attach { host: Graph, v: usize, gadget: AttachGadget, anchor: usize },
}

/// Base graphs for extremal constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Graph6(Graph),
}

impl Base {
    pub fn graph(&self) -> Result<Graph, FamilyError> {
        match self {
            Base::Path(n) => Ok(Graph::path(*n)),
            Base::Cycle(n) if *n >= 3 => Ok(Graph::cycle(*n)),
            Base::Cycle(n) => Err(invalid(format!("cycle{n} is too short"))),
            Base::Complete(n) => Ok(Graph::complete(*n)),
            Base::Graph6(g) => Ok(g.clone()),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Path(n) => write!(f, "path{n}"),
            Base::Cycle(n) => write!(f, "cycle{n}"),
            Base::Complete(n) => write!(f, "complete{n}"),
            Base::Graph6(g) => write!(f, "g6={}", to_graph6(g)),
        }
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph, FamilyError> {
        match self {
            FamilySpec::Cycle(n) if *n >= 3 => Ok(Graph::cycle(*n)),
            FamilySpec::Cycle(n) => Err(invalid(format!("cycle needs n >= 3, got {n}"))),
            FamilySpec::Tadpole(s, t) => tadpole(*s, *t),
            FamilySpec::SubdividedStar(t) => subdivided_star(*t),
            FamilySpec::FFamily(gadgets) => f_family(gadgets),
            FamilySpec::TExtremal { base, units } => {
                let f = base.graph()?;
                if units.len() == 1 {
                    t_extremal(&f, &vec![units[0]; f.order()])
                } else {
                    t_extremal(&f, units)
                }
            }
            FamilySpec::UExtremal(n) => u_extremal(*n),
            FamilySpec::Attach { host, v, gadget, anchor } => attach(host, *v, *gadget, *anchor),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Tadpole(s, t) => write!(f, "tadpole:{s},{t}"),
            FamilySpec::SubdividedStar(t) => write!(f, "star:{t}"),
            FamilySpec::FFamily(gs) => {
                let names: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
                write!(f, "f:[{}]", names.join(","))
            }
            FamilySpec::TExtremal { base, units } => {
                let names: Vec<String> = units.iter().map(|u| u.to_string()).collect();
                write!(f, "t:{base}/{}", names.join("+"))
            }
            FamilySpec::UExtremal(n) => write!(f, "u:{n}"),
            FamilySpec::Attach { host, v, gadget, anchor } => {
                write!(f, "attach:{}:v={v}:gadget={}:anchor={anchor}", to_graph6(host), gadget.name())
            }
        }
    }
}

/// Parser state: the full input and a cursor, for error positions.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, FamilyError> {
        Err(FamilyError::Syntax { position: at, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn expect(&mut self, token: &str) -> Result<(), FamilyError> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            self.err(self.pos, format!("expected {token:?}"))
        }
    }

    fn number(&mut self) -> Result<usize, FamilyError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err(self.pos, "expected a number");
        }
        let start = self.pos;
        self.pos += digits;
        self.text[start..self.pos].parse().or_else(|_| self.err(start, "number too large"))
    }

    /// Text up to (not including) the next `stop` byte or the end.
    fn until(&mut self, stop: char) -> &'a str {
        let len = self.rest().find(stop).unwrap_or(self.rest().len());
        let s = &self.rest()[..len];
        self.pos += len;
        s
    }

    fn done(&self) -> Result<(), FamilyError> {
        if self.pos == self.text.len() {
            Ok(())
        } else {
            self.err(self.pos, "unexpected trailing input")
        }
    }

    fn pair(&mut self) -> Result<(usize, usize), FamilyError> {
        let a = self.number()?;
        self.expect(",")?;
        Ok((a, self.number()?))
    }

    fn gadget(&mut self) -> Result<Gadget, FamilyError> {
        let start = self.pos;
        if !(self.rest().starts_with('c') || self.rest().starts_with('C')) {
            return self.err(start, "gadget names start with 'c'");
        }
        self.pos += 1;
        let r = self.number()?;
        let gadget = if self.rest().starts_with('-') {
            self.pos += 1;
            Gadget::Tadpole(r, self.number()?)
        } else {
            Gadget::Cycle(r)
        };
        match gadget.check() {
            Ok(()) => Ok(gadget),
            Err(e) => self.err(start, e.to_string()),
        }
    }

    fn base(&mut self) -> Result<Base, FamilyError> {
        let start = self.pos;
        for (prefix, make) in [
            ("path", Base::Path as fn(usize) -> Base),
            ("cycle", Base::Cycle as fn(usize) -> Base),
            ("complete", Base::Complete as fn(usize) -> Base),
        ] {
            if self.rest().starts_with(prefix) {
                self.pos += prefix.len();
                return Ok(make(self.number()?));
            }
        }
        if self.rest().starts_with("g6=") {
            self.pos += 3;
            let at = self.pos;
            let code = self.until('/');
            return match parse_graph6(code) {
                Ok(g) => Ok(Base::Graph6(g)),
                Err(e) => self.err(at + e.offset, e.kind.to_string()),
            };
        }
        self.err(start, "expected pathN, cycleN, completeN or g6=<graph6>")
    }

    fn unit(&mut self) -> Result<TUnit, FamilyError> {
        let start = self.pos;
        match self.pair()? {
            (4, 2) => Ok(TUnit::C42),
            (5, 1) => Ok(TUnit::C51),
            other => self.err(start, format!("unit {other:?} is neither 4,2 nor 5,1")),
        }
    }

    fn field(&mut self, key: &str) -> Result<&'a str, FamilyError> {
        self.expect(":")?;
        self.expect(key)?;
        self.expect("=")?;
        Ok(self.until(':'))
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Grammar:
    /// `cycle:N` | `tadpole:S,T` | `star:T` | `f:[G,G,...]` with `G` one of
    /// `c3 c4 c5` or `cR-K` | `t:BASE/U+U+...` with `BASE` one of `pathN`,
    /// `cycleN`, `completeN`, `g6=<graph6>` and `U` one of `4,2` `5,1`
    /// (a single unit applies to every base vertex) | `u:N` |
    /// `attach:<graph6>:v=V:gadget=NAME:anchor=A`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor { text, pos: 0 };
        let kind = c.until(':');
        if kind.len() == text.len() {
            return c.err(0, "expected `<kind>:`");
        }
        c.expect(":")?;
        let spec = match kind {
            "cycle" => FamilySpec::Cycle(c.number()?),
            "tadpole" => {
                let (s, t) = c.pair()?;
                FamilySpec::Tadpole(s, t)
            }
            "star" => FamilySpec::SubdividedStar(c.number()?),
            "f" => {
                c.expect("[")?;
                let mut gadgets = vec![c.gadget()?];
                while c.rest().starts_with(',') {
                    c.pos += 1;
                    gadgets.push(c.gadget()?);
                }
                c.expect("]")?;
                FamilySpec::FFamily(gadgets)
            }
            "t" => {
                let base = c.base()?;
                c.expect("/")?;
                let mut units = vec![c.unit()?];
                while c.rest().starts_with('+') {
                    c.pos += 1;
                    units.push(c.unit()?);
                }
                FamilySpec::TExtremal { base, units }
            }
            "u" => FamilySpec::UExtremal(c.number()?),
            "attach" => {
                let at = c.pos;
                let code = c.until(':');
                let host = match parse_graph6(code) {
                    Ok(g) => g,
                    Err(e) => return c.err(at + e.offset, e.kind.to_string()),
                };
                let v_at = c.pos + ":v=".len();
                let v = parse_number(c.field("v")?, v_at)?;
                let gadget_at = c.pos + ":gadget=".len();
                let gadget = c.field("gadget")?.parse().map_err(|e: FamilyError| FamilyError::Syntax {
                    position: gadget_at,
                    message: e.to_string(),
                })?;
                let anchor_at = c.pos + ":anchor=".len();
                let anchor = parse_number(c.field("anchor")?, anchor_at)?;
                FamilySpec::Attach { host, v, gadget, anchor }
            }
            other => return c.err(0, format!("unknown family {other:?}")),
        };
        c.done()?;
        Ok(spec)
    }
}

fn parse_number(text: &str, position: usize) -> Result<usize, FamilyError> {
    text.parse().map_err(|_| FamilyError::Syntax { position, message: format!("expected a number, found {text:?}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disjunctive::gamma_d2_value;
    use crate::graph::{are_isomorphic, is_claw_free};
    use proptest::prelude::*;

    #[test]
    fn tadpole_shapes() {
        let t41 = tadpole(4, 1).unwrap();
        assert_eq!(t41.degree(4), 1);
        assert!(t41.has_edge(0, 4));
        let t31 = tadpole(3, 1).unwrap();
        assert_eq!((t31.order(), t31.size()), (4, 4));
        assert_eq!(gamma_d2_value(&tadpole(4, 2).unwrap()).unwrap(), 2);
        assert!(tadpole(2, 1).is_err() && tadpole(3, 0).is_err());
    }

    #[test]
    fn subdivided_star_shape() {
        let s = subdivided_star(3).unwrap();
        assert_eq!(s.order(), 7);
        assert_eq!(s.degree_sequence(), vec![3, 2, 2, 2, 1, 1, 1]);
        assert_eq!(s.distances_from(0)[4..], [2, 2, 2]);
    }

    #[test]
    fn hub_family_examples() {
        let bowtie = f_family(&[Gadget::Cycle(3), Gadget::Cycle(3)]).unwrap();
        assert_eq!((bowtie.order(), bowtie.degree(0)), (5, 4));
        let g4 = f_family(&[Gadget::Cycle(4), Gadget::Tadpole(4, 1)]).unwrap();
        assert_eq!(catalog::is_forbidden(&g4), Some("G4"));
        let g5 = f_family(&[Gadget::Cycle(4), Gadget::Cycle(5)]).unwrap();
        assert_eq!(catalog::is_forbidden(&g5), Some("G5"));
        assert!(f_family(&[Gadget::Cycle(3)]).is_err());
        assert!(f_family(&[Gadget::Cycle(3), Gadget::Cycle(6)]).is_err());
        assert!(f_family(&[Gadget::Cycle(3), Gadget::Tadpole(4, 4)]).is_err());
    }

    #[test]
    fn extremal_shapes() {
        let p4 = t_extremal(&Graph::path(4), &[TUnit::C42; 4]).unwrap();
        assert_eq!(p4.order(), 24);
        assert_eq!(p4.min_degree(), 2);
        let p2 = t_extremal(&Graph::path(2), &[TUnit::C42, TUnit::C42]).unwrap();
        assert_eq!(gamma_d2_value(&p2).unwrap(), 4);
        assert!(t_extremal(&Graph::empty(2), &[TUnit::C42; 2]).is_err());
        let u2 = u_extremal(2).unwrap();
        assert_eq!(u2.order(), 12);
        assert!(is_claw_free(&u2) && u2.min_degree() == 2);
        assert_eq!(gamma_d2_value(&u2).unwrap(), 4);
        assert_eq!(u_extremal(3).unwrap().order(), 18);
    }

    #[test]
    fn attach_examples() {
        let h1 = attach(&Graph::cycle(3), 1, AttachGadget::C4, 0).unwrap();
        assert_eq!(h1.order(), 7);
        assert!(h1.has_edge(1, 3));
        assert!(attach(&Graph::cycle(3), 0, AttachGadget::C41, 0).is_err());
        let h3 = attach(&Graph::cycle(3), 0, AttachGadget::C41, 4).unwrap();
        assert_eq!(h3.min_degree(), 2);
        assert!(attach(&Graph::cycle(3), 0, AttachGadget::C4, 4).is_err());
        assert!(attach(&Graph::cycle(3), 3, AttachGadget::C4, 0).is_err());
    }

    #[test]
    fn spec_parsing() {
        let g = "tadpole:5,1".parse::<FamilySpec>().unwrap().build().unwrap();
        assert_eq!(g.order(), 6);
        let g = "t:path4/4,2".parse::<FamilySpec>().unwrap().build().unwrap();
        assert_eq!(g.order(), 24);
        let mixed: FamilySpec = "t:cycle3/4,2+5,1+4,2".parse().unwrap();
        assert_eq!(mixed.build().unwrap().order(), 18);
        let f: FamilySpec = "f:[c3,c3,c4-1]".parse().unwrap();
        assert_eq!(f, FamilySpec::FFamily(vec![Gadget::Cycle(3), Gadget::Cycle(3), Gadget::Tadpole(4, 1)]));
        let a: FamilySpec = "attach:Bw:v=2:gadget=C4:anchor=0".parse().unwrap();
        assert!(are_isomorphic(&a.build().unwrap(), &attach(&Graph::cycle(3), 0, AttachGadget::C4, 0).unwrap()));
        assert!(is_claw_free(&"u:2".parse::<FamilySpec>().unwrap().build().unwrap()));
    }

    #[test]
    fn spec_errors_report_positions() {
        let pos = |s: &str| match s.parse::<FamilySpec>() {
            Err(FamilyError::Syntax { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("tadpole:4;2"), 9);
        assert_eq!(pos("f:[c3,c9]"), 6);
        assert_eq!(pos("t:path4/3,3"), 8);
        assert_eq!(pos("nope:1"), 0);
        assert_eq!(pos("u:2x"), 3);
        assert_eq!(pos("attach:Bw:v=2:gadget=K9:anchor=0"), 21);
    }

    fn arb_spec() -> impl Strategy<Value = FamilySpec> {
        let gadget = prop_oneof![
            (3usize..=5).prop_map(Gadget::Cycle),
            (3usize..=5, 1usize..=3).prop_map(|(r, k)| Gadget::Tadpole(r, k)),
        ];
        let unit = prop_oneof![Just(TUnit::C42), Just(TUnit::C51)];
        prop_oneof![
            (3usize..40).prop_map(FamilySpec::Cycle),
            (3usize..9, 1usize..9).prop_map(|(s, t)| FamilySpec::Tadpole(s, t)),
            (2usize..9).prop_map(FamilySpec::SubdividedStar),
            proptest::collection::vec(gadget, 2..5).prop_map(FamilySpec::FFamily),
            (2usize..5, proptest::collection::vec(unit, 1..2))
                .prop_map(|(n, units)| FamilySpec::TExtremal { base: Base::Path(n), units }),
            (2usize..5).prop_map(FamilySpec::UExtremal),
        ]
    }

    proptest! {
        #[test]
        fn specs_round_trip_and_sizes_add_up(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(&text.parse::<FamilySpec>().unwrap(), &spec);
            let g = spec.build().unwrap();
            let expected = match &spec {
                FamilySpec::Cycle(n) => *n,
                FamilySpec::Tadpole(s, t) => s + t,
                FamilySpec::SubdividedStar(t) => 2 * t + 1,
                FamilySpec::FFamily(gs) => 1 + gs.iter().map(|g| g.order() - 1).sum::<usize>(),
                FamilySpec::TExtremal { base, .. } => 6 * base.graph().unwrap().order(),
                FamilySpec::UExtremal(n) => 6 * n,
                FamilySpec::Attach { .. } => unreachable!(),
            };
            prop_assert_eq!(g.order(), expected);
            if !matches!(spec, FamilySpec::Tadpole(..) | FamilySpec::SubdividedStar(_)) {
                prop_assert!(g.min_degree() >= 2);
            }
        }
    }
}
