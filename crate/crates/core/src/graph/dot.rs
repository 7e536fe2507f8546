//! Graphviz DOT codec for the subset of the language this crate emits.
//!
//! The alphabet travels in the graph's `comment` attribute, sinks use
//! `shape=box`, and failure links are `style=dotted` edges without labels.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Edge, GraphDocument, LabeledGraph, StateId, StateInfo};
use crate::error::{Error, Result};
use crate::words::Alphabet;

const ALPHABET_TAG: &str = "alphabet:";

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

pub(super) fn write_dot(doc: &GraphDocument) -> String {
    let g = &doc.graph;
    let alphabet = g.alphabet();
    let mut out = String::from("digraph {\n  rankdir=LR;\n");
    let _ = writeln!(
        out,
        "  comment={};",
        quote(&format!("{ALPHABET_TAG} {}", alphabet.names().join(" ")))
    );
    for (id, s) in g.states().iter().enumerate() {
        if s.sink {
            let _ = writeln!(out, "  {id} [label={}, shape=box];", quote(&s.name));
        } else {
            let _ = writeln!(out, "  {id} [label={}];", quote(&s.name));
        }
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            e.from,
            e.to,
            quote(alphabet.name(e.label))
        );
    }
    if let Some(links) = &doc.failure {
        for (s, t) in links {
            let _ = writeln!(out, "  {s} -> {t} [style=dotted];");
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Id(String),
    Arrow,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Comma,
    Semi,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            chars: input.char_indices().peekable(),
            line: 1,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next().map(|(_, c)| c);
        if c == Some('\n') {
            self.line += 1;
        }
        c
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn skip_line(&mut self) {
        while let Some(c) = self.bump() {
            if c == '\n' {
                break;
            }
        }
    }

    fn tokens(mut self) -> Result<Vec<(Token, usize)>> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let line = self.line;
            match c {
                c if c.is_whitespace() => {
                    self.bump();
                }
                '#' => self.skip_line(),
                '/' => {
                    self.bump();
                    match self.bump() {
                        Some('/') => self.skip_line(),
                        Some('*') => {
                            let mut prev = ' ';
                            loop {
                                match self.bump() {
                                    Some('/') if prev == '*' => break,
                                    Some(c) => prev = c,
                                    None => return Err(self.err("unterminated comment")),
                                }
                            }
                        }
                        _ => return Err(self.err("stray `/`")),
                    }
                }
                '-' => {
                    self.bump();
                    if self.bump() != Some('>') {
                        return Err(self.err("expected `->`"));
                    }
                    out.push((Token::Arrow, line));
                }
                '{' | '}' | '[' | ']' | '=' | ',' | ';' => {
                    self.bump();
                    let t = match c {
                        '{' => Token::LBrace,
                        '}' => Token::RBrace,
                        '[' => Token::LBracket,
                        ']' => Token::RBracket,
                        '=' => Token::Eq,
                        ',' => Token::Comma,
                        _ => Token::Semi,
                    };
                    out.push((t, line));
                }
                '"' => {
                    self.bump();
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some('n') => s.push('\n'),
                                Some(c) => s.push(c),
                                None => return Err(self.err("unterminated string")),
                            },
                            Some(c) => s.push(c),
                            None => return Err(self.err("unterminated string")),
                        }
                    }
                    out.push((Token::Id(s), line));
                }
                c if c.is_alphanumeric() || c == '_' || c == '.' => {
                    let mut s = String::new();
                    while let Some(c) = self.peek() {
                        if c.is_alphanumeric() || c == '_' || c == '.' {
                            s.push(c);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    out.push((Token::Id(s), line));
                }
                other => return Err(self.err(format!("unexpected character {other:?}"))),
            }
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

type Attrs = Vec<(String, String)>;

impl Parser {
    fn line(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or(self.tokens.last())
            .map_or(0, |t| t.1)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(self.err(format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn id(&mut self) -> Result<String> {
        match self.next() {
            Some(Token::Id(s)) => Ok(s),
            other => Err(self.err(format!("expected identifier, found {other:?}"))),
        }
    }

    fn attr_lists(&mut self) -> Result<Attrs> {
        let mut attrs = Vec::new();
        while self.peek() == Some(&Token::LBracket) {
            self.next();
            loop {
                match self.peek() {
                    Some(Token::RBracket) => {
                        self.next();
                        break;
                    }
                    Some(Token::Comma) | Some(Token::Semi) => {
                        self.next();
                    }
                    _ => {
                        let key = self.id()?;
                        self.expect(Token::Eq)?;
                        let value = self.id()?;
                        attrs.push((key, value));
                    }
                }
            }
        }
        Ok(attrs)
    }
}

fn attr<'a>(attrs: &'a Attrs, key: &str) -> Option<&'a str> {
    attrs
        .iter()
        .rev()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

fn node_id(p: &Parser, s: &str) -> Result<usize> {
    s.parse::<usize>().map_err(|_| {
        p.err(format!(
            "node ids must be non-negative integers, found {s:?}"
        ))
    })
}

/// Parses DOT produced by this crate (and hand-written DOT in the same
/// subset). Node ids must be `0..n`.
pub fn parse_dot(input: &str) -> Result<GraphDocument> {
    let tokens = Lexer::new(input).tokens()?;
    let mut p = Parser { tokens, pos: 0 };

    let mut head = p.id()?;
    if head == "strict" {
        head = p.id()?;
    }
    if head != "digraph" {
        return Err(p.err("expected `digraph`"));
    }
    if matches!(p.peek(), Some(Token::Id(_))) {
        p.next();
    }
    p.expect(Token::LBrace)?;

    let mut alphabet_decl: Option<Vec<String>> = None;
    let mut nodes: BTreeMap<usize, StateInfo> = BTreeMap::new();
    let mut edges: Vec<(usize, usize, String, usize)> = Vec::new();
    let mut failure: Vec<(usize, usize)> = Vec::new();

    loop {
        match p.peek() {
            Some(Token::RBrace) => {
                p.next();
                break;
            }
            Some(Token::Semi) => {
                p.next();
                continue;
            }
            None => return Err(p.err("unexpected end of input")),
            _ => {}
        }
        let line = p.line();
        let first = p.id()?;
        match p.peek() {
            Some(Token::Eq) => {
                p.next();
                let value = p.id()?;
                if first == "comment" {
                    if let Some(rest) = value.trim().strip_prefix(ALPHABET_TAG) {
                        alphabet_decl = Some(rest.split_whitespace().map(String::from).collect());
                    }
                }
            }
            Some(Token::Arrow) => {
                p.next();
                let second = p.id()?;
                let from = node_id(&p, &first)?;
                let to = node_id(&p, &second)?;
                let attrs = p.attr_lists()?;
                if attr(&attrs, "style") == Some("dotted") {
                    failure.push((from, to));
                } else {
                    let label = attr(&attrs, "label")
                        .ok_or_else(|| p.err("edge without label"))?
                        .to_string();
                    edges.push((from, to, label, line));
                }
            }
            _ if matches!(first.as_str(), "graph" | "node" | "edge") => {
                p.attr_lists()?;
            }
            _ => {
                let id = node_id(&p, &first)?;
                let attrs = p.attr_lists()?;
                let name = attr(&attrs, "label").unwrap_or(&first).to_string();
                let sink = attr(&attrs, "shape") == Some("box");
                let info = StateInfo {
                    name,
                    word: None,
                    sink,
                };
                if nodes.insert(id, info).is_some() {
                    return Err(p.err(format!("node {id} declared twice")));
                }
            }
        }
    }
    if p.pos < p.tokens.len() {
        return Err(p.err("trailing input after graph"));
    }

    let names = match alphabet_decl {
        Some(names) => names,
        None => {
            let mut names: Vec<String> = Vec::new();
            for (_, _, label, _) in &edges {
                if !names.contains(label) {
                    names.push(label.clone());
                }
            }
            names
        }
    };
    let alphabet = Alphabet::new(names)?;

    let n = nodes.len();
    if let Some((_, &id)) = nodes.keys().enumerate().find(|(i, id)| i != *id) {
        return Err(Error::Parse {
            line: 0,
            message: format!("node ids must be 0..{n}; found {id}"),
        });
    }
    let states: Vec<StateInfo> = nodes
        .into_values()
        .map(|mut s| {
            s.word = alphabet.parse_word(&s.name).ok();
            s
        })
        .collect();
    let edges = edges
        .into_iter()
        .map(|(from, to, label, line)| {
            let label = alphabet.symbol(&label).ok_or(Error::Parse {
                line,
                message: format!("edge label `{label}` is not in the alphabet"),
            })?;
            Ok(Edge {
                from: StateId(from),
                to: StateId(to),
                label,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let graph = LabeledGraph::assemble(alphabet, states, edges)?;
    for &(s, t) in &failure {
        if s >= n || t >= n {
            return Err(Error::DanglingEdge { from: s, to: t });
        }
    }
    let failure = if failure.is_empty() {
        None
    } else {
        Some(
            failure
                .into_iter()
                .map(|(s, t)| (StateId(s), StateId(t)))
                .collect(),
        )
    };
    Ok(GraphDocument { graph, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{edge, words};
    use crate::graph::{serialize, Format};

    fn golden_mean() -> LabeledGraph {
        let a = Alphabet::from_chars("ab").unwrap();
        LabeledGraph::assemble(
            a.clone(),
            words(&a, &["ε", "a"]),
            vec![edge(0, 1, 0), edge(0, 0, 1), edge(1, 0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn writes_expected_dot() {
        let text = String::from_utf8(serialize(&golden_mean(), Format::Dot)).unwrap();
        assert_eq!(
            text,
            "digraph {\n  rankdir=LR;\n  comment=\"alphabet: a b\";\n  0 [label=\"ε\"];\n  1 [label=\"a\"];\n  0 -> 1 [label=\"a\"];\n  0 -> 0 [label=\"b\"];\n  1 -> 0 [label=\"b\"];\n}\n"
        );
        assert_eq!(text.matches("->").count(), 3);
    }

    #[test]
    fn round_trips() {
        let mut g = golden_mean();
        let doc = GraphDocument {
            graph: g.clone(),
            failure: Some(vec![(StateId(1), StateId(0))]),
        };
        let back = parse_dot(&write_dot(&doc)).unwrap();
        assert_eq!(back, doc);
        g.states[1].sink = true;
        g.states[1].name = "we\"ird\\name".into();
        g.states[1].word = None;
        let doc = GraphDocument::plain(g);
        assert_eq!(parse_dot(&write_dot(&doc)).unwrap(), doc);
    }

    #[test]
    fn accepts_hand_written_subset() {
        let text = "/* hand */ digraph G {\n node [shape=circle]\n 1 [label=x]\n 0\n 0 -> 1 [label=p, color=red]; 1->0 [label=q] // back\n}";
        let doc = parse_dot(text).unwrap();
        assert_eq!(doc.graph.len(), 2);
        assert_eq!(doc.graph.alphabet().names(), ["p", "q"]);
        assert_eq!(doc.graph.name(StateId(0)), "0");
        assert_eq!(doc.graph.edge_count(), 2);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_dot("graph { }").is_err());
        assert!(parse_dot("digraph { 0 -> 1 [label=a]; 0; }").is_err());
        assert!(parse_dot("digraph { 0; 2; }").is_err());
        assert!(parse_dot("digraph { x; }").is_err());
        assert!(parse_dot("digraph { 0; 0; }").is_err());
        assert!(parse_dot("digraph { \"open").is_err());
        assert!(parse_dot("digraph { 0; } extra").is_err());
        assert!(matches!(
            parse_dot(
                "digraph { comment=\"alphabet: a\"; 0; 0 -> 0 [label=a]; 0 -> 0 [label=a]; }"
            ),
            Err(Error::NondeterministicState { .. })
        ));
    }
}
