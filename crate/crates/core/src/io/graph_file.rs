//! Plain-text graph description.
//!
//! ```text
//! # a lasso with a flux through its loop
//! [vertices]
//! 0 N
//! 1 N
//! [edges]
//! 0 0 1 1
//! 1 0 0 sqrt(2)
//! [fluxes]
//! 1 pi/3
//! ```
//!
//! Sections may appear in any order; `[fluxes]` is optional. A vertex line is
//! `id condition` with the condition `N`, `D`, `neumann` or `dirichlet`. An
//! edge line is `id u v length`. A flux line is `chord-edge-id value`. Ids in
//! each section are `0..n` in any order, each exactly once. Lengths and flux
//! values are expressions over decimal numbers, `pi`, `sqrt(..)`, `+ - * /`
//! and parentheses. Everything after `#` is ignored.

use num_traits::Num;

use crate::error::{Error, Result};
use crate::graph::{MetricGraph, VertexCondition};
use crate::magnetic::FluxAssignment;
use crate::scalar::Real;

/// Result of reading a graph file.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphFile<T> {
    pub graph: MetricGraph<T>,
    /// Present when the file has a `[fluxes]` section.
    pub flux: Option<FluxAssignment<T>>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Vertices,
    Edges,
    Fluxes,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn semantic(line: usize, message: impl Into<String>) -> Error {
    Error::Semantic { line, message: message.into() }
}

/// Splits off the next whitespace-delimited field, returning it with its 1-based column.
fn field<'a>(rest: &mut &'a str, offset: &mut usize) -> Option<(&'a str, usize)> {
    let trimmed = rest.trim_start();
    *offset += rest.len() - trimmed.len();
    if trimmed.is_empty() {
        return None;
    }
    let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
    let (tok, tail) = trimmed.split_at(end);
    let col = *offset + 1;
    *offset += end;
    *rest = tail;
    Some((tok, col))
}

fn parse_id(tok: Option<(&str, usize)>, line: usize, end_col: usize, what: &str) -> Result<usize> {
    let (tok, col) = tok.ok_or_else(|| syntax(line, end_col, format!("expected {what}")))?;
    tok.parse().map_err(|_| syntax(line, col, format!("expected {what}, found `{tok}`")))
}

pub fn parse_graph_file<T: Real>(text: &str) -> Result<GraphFile<T>> {
    let mut section = Section::None;
    let mut vertices: Vec<(usize, usize, VertexCondition)> = Vec::new();
    let mut edges: Vec<(usize, usize, usize, usize, T)> = Vec::new();
    let mut fluxes: Vec<(usize, usize, T)> = Vec::new();
    let mut saw_fluxes = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let end_col = content.trim_end().chars().count() + 1;
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('[') {
            let col = content.find('[').unwrap_or(0) + 1;
            let name = trimmed
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| syntax(line, col, "unterminated section header"))?;
            section = match name.trim() {
                "vertices" => Section::Vertices,
                "edges" => Section::Edges,
                "fluxes" => {
                    saw_fluxes = true;
                    Section::Fluxes
                }
                other => return Err(syntax(line, col + 1, format!("unknown section `{other}`"))),
            };
            continue;
        }
        let mut rest = content;
        let mut offset = 0;
        match section {
            Section::None => return Err(syntax(line, 1, "entry before any section header")),
            Section::Vertices => {
                let id = parse_id(field(&mut rest, &mut offset), line, end_col, "vertex id")?;
                let (tok, col) =
                    field(&mut rest, &mut offset).ok_or_else(|| syntax(line, end_col, "expected vertex condition"))?;
                let cond = match tok.to_ascii_lowercase().as_str() {
                    "n" | "neumann" => VertexCondition::Neumann,
                    "d" | "dirichlet" => VertexCondition::Dirichlet,
                    _ => return Err(syntax(line, col, format!("unknown vertex condition `{tok}`"))),
                };
                if let Some((tok, col)) = field(&mut rest, &mut offset) {
                    return Err(syntax(line, col, format!("unexpected `{tok}`")));
                }
                vertices.push((line, id, cond));
            }
            Section::Edges => {
                let id = parse_id(field(&mut rest, &mut offset), line, end_col, "edge id")?;
                let u = parse_id(field(&mut rest, &mut offset), line, end_col, "endpoint id")?;
                let v = parse_id(field(&mut rest, &mut offset), line, end_col, "endpoint id")?;
                let length = parse_expression::<T>(rest, line, offset)?;
                edges.push((line, id, u, v, length));
            }
            Section::Fluxes => {
                let id = parse_id(field(&mut rest, &mut offset), line, end_col, "edge id")?;
                let value = parse_expression::<T>(rest, line, offset)?;
                fluxes.push((line, id, value));
            }
        }
    }

    let conditions = ordered(vertices.iter().map(|&(l, id, c)| (l, id, c)), "vertex")?;
    let edge_list = ordered(edges.iter().map(|&(l, id, u, v, len)| (l, id, (l, u, v, len))), "edge")?;
    if conditions.is_empty() {
        return Err(semantic(1, "no vertices"));
    }
    let mut triples = Vec::with_capacity(edge_list.len());
    for &(l, u, v, len) in &edge_list {
        for x in [u, v] {
            if x >= conditions.len() {
                return Err(semantic(l, format!("endpoint {x} is not a vertex")));
            }
        }
        if !(len > T::zero() && len.is_finite()) {
            return Err(semantic(l, format!("edge length must be positive, got {len}")));
        }
        triples.push((u, v, len));
    }
    let graph = MetricGraph::new(&conditions, &triples).map_err(|e| {
        let line = match e {
            Error::NonPositiveLength { edge, .. } | Error::DanglingEndpoint { edge, .. } => edge_list[edge].0,
            _ => 1,
        };
        semantic(line, e.to_string())
    })?;

    let flux = if saw_fluxes {
        let basis = graph.fundamental_cycles();
        let mut values = vec![T::zero(); basis.beta];
        let mut seen = vec![false; basis.beta];
        for &(l, id, value) in &fluxes {
            let slot = basis
                .chords
                .iter()
                .position(|&c| c == id)
                .ok_or_else(|| semantic(l, format!("edge {id} is not a cycle chord; chords are {:?}", basis.chords)))?;
            if seen[slot] {
                return Err(semantic(l, format!("duplicate flux for edge {id}")));
            }
            seen[slot] = true;
            values[slot] = value;
        }
        Some(FluxAssignment::new(values))
    } else {
        None
    };
    Ok(GraphFile { graph, flux })
}

/// Places entries by id, requiring ids `0..n` each exactly once.
fn ordered<V: Copy>(items: impl Iterator<Item = (usize, usize, V)>, what: &str) -> Result<Vec<V>> {
    let items: Vec<_> = items.collect();
    let mut slots: Vec<Option<V>> = vec![None; items.len()];
    for &(line, id, v) in &items {
        if id >= items.len() {
            return Err(semantic(line, format!("{what} id {id} out of range 0..{}", items.len())));
        }
        if slots[id].is_some() {
            return Err(semantic(line, format!("duplicate {what} id {id}")));
        }
        slots[id] = Some(v);
    }
    Ok(slots.into_iter().map(|s| s.expect("every id filled")).collect())
}

/// Writes a graph (and optional flux) in the format read by [`parse_graph_file`].
///
/// Numbers use the shortest decimal form that reads back to the same value.
pub fn serialize_graph<T: Real>(graph: &MetricGraph<T>, flux: Option<&FluxAssignment<T>>) -> String {
    let mut out = String::from("[vertices]\n");
    for v in graph.vertices() {
        let c = match v.condition {
            VertexCondition::Neumann => "N",
            VertexCondition::Dirichlet => "D",
        };
        out.push_str(&format!("{} {}\n", v.id, c));
    }
    out.push_str("[edges]\n");
    for e in graph.edges() {
        out.push_str(&format!("{} {} {} {}\n", e.id, e.endpoints.0, e.endpoints.1, e.length));
    }
    if let Some(flux) = flux {
        out.push_str("[fluxes]\n");
        let basis = graph.fundamental_cycles();
        for (chord, value) in basis.chords.iter().zip(flux.values()) {
            out.push_str(&format!("{} {}\n", chord, value));
        }
    }
    out
}

struct ExprParser<T> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    offset: usize,
    _t: std::marker::PhantomData<T>,
}

fn parse_expression<T: Real>(src: &str, line: usize, offset: usize) -> Result<T> {
    let mut p = ExprParser { chars: src.chars().collect(), pos: 0, line, offset, _t: std::marker::PhantomData };
    p.skip_ws();
    if p.pos == p.chars.len() {
        return Err(syntax(line, offset + src.chars().count() + 1, "expected expression"));
    }
    let v = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(v)
}

impl<T: Real> ExprParser<T> {
    fn error(&self, message: String) -> Error {
        syntax(self.line, self.offset + self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<T> {
        let mut v = self.product()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let r = self.product()?;
            v = if c == '+' { v + r } else { v - r };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<T> {
        let mut v = self.factor()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let r = self.factor()?;
            v = if c == '*' { v * r } else { v / r };
        }
        Ok(v)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`"))),
        }
    }

    fn factor(&mut self) -> Result<T> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match name.as_str() {
                    "pi" => Ok(T::PI()),
                    "sqrt" => {
                        self.expect('(')?;
                        let v = self.sum()?;
                        self.expect(')')?;
                        Ok(v.sqrt())
                    }
                    _ => {
                        self.pos = start;
                        Err(self.error(format!("unknown name `{name}`")))
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of expression".into())),
        }
    }

    fn number(&mut self) -> Result<T> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.chars.len() && p.chars[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            digits(self);
        }
        if matches!(self.chars.get(self.pos), Some('e' | 'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.chars.get(self.pos), Some('+' | '-')) {
                self.pos += 1;
            }
            if self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                digits(self);
            } else {
                self.pos = save;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        <T as Num>::from_str_radix(&text, 10)
            .map_err(|_| syntax(self.line, self.offset + start + 1, format!("malformed number `{text}`")))
    }
}
