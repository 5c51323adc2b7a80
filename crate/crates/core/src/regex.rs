//! Regular expressions over an explicit alphabet and their compilation to the
//! canonical automaton through Brzozowski derivatives.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor+
//! factor := base ('*' | '+' | '?')*
//! base   := letter | '%e' | '%0' | '(' expr ')'
//! ```
//!
//! `%e` denotes the empty word and `%0` the empty language.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Empty,
    Epsilon,
    Letter(char),
    Concat(Box<Node>, Box<Node>),
    Union(Box<Node>, Box<Node>),
    Star(Box<Node>),
    Plus(Box<Node>),
    Optional(Box<Node>),
}

impl Node {
    pub fn concat(a: Node, b: Node) -> Node {
        Node::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Node, b: Node) -> Node {
        Node::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Node) -> Node {
        Node::Star(Box::new(a))
    }

    pub fn plus(a: Node) -> Node {
        Node::Plus(Box::new(a))
    }

    pub fn optional(a: Node) -> Node {
        Node::Optional(Box::new(a))
    }

    pub fn size(&self) -> usize {
        match self {
            Node::Empty | Node::Epsilon | Node::Letter(_) => 1,
            Node::Concat(a, b) | Node::Union(a, b) => 1 + a.size() + b.size(),
            Node::Star(a) | Node::Plus(a) | Node::Optional(a) => 1 + a.size(),
        }
    }

    /// Direct membership test by structural recursion, independent of any
    /// automaton construction.
    pub fn matches(&self, word: &[char]) -> bool {
        match self {
            Node::Empty => false,
            Node::Epsilon => word.is_empty(),
            Node::Letter(c) => word.len() == 1 && word[0] == *c,
            Node::Union(a, b) => a.matches(word) || b.matches(word),
            Node::Concat(a, b) => (0..=word.len()).any(|i| a.matches(&word[..i]) && b.matches(&word[i..])),
            Node::Optional(a) => word.is_empty() || a.matches(word),
            Node::Star(a) => star_matches(a, word),
            Node::Plus(a) => {
                (1..=word.len()).any(|i| a.matches(&word[..i]) && star_matches(a, &word[i..]))
                    || (word.is_empty() && a.matches(word))
            }
        }
    }

    /// Replaces `x+` by `x x*` and `x?` by `x | %e`.
    pub fn desugar(&self) -> Node {
        match self {
            Node::Empty | Node::Epsilon | Node::Letter(_) => self.clone(),
            Node::Concat(a, b) => Node::concat(a.desugar(), b.desugar()),
            Node::Union(a, b) => Node::union(a.desugar(), b.desugar()),
            Node::Star(a) => Node::star(a.desugar()),
            Node::Plus(a) => {
                let a = a.desugar();
                Node::concat(a.clone(), Node::star(a))
            }
            Node::Optional(a) => Node::union(a.desugar(), Node::Epsilon),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        let (own, paren) = match self {
            Node::Union(..) => (0, prec > 0),
            Node::Concat(..) => (1, prec > 1),
            _ => (2, false),
        };
        if paren {
            write!(f, "(")?;
        }
        match self {
            Node::Empty => write!(f, "%0")?,
            Node::Epsilon => write!(f, "%e")?,
            Node::Letter(c) => write!(f, "{c}")?,
            Node::Union(a, b) => {
                a.fmt_prec(f, own)?;
                write!(f, "|")?;
                b.fmt_prec(f, own)?;
            }
            Node::Concat(a, b) => {
                a.fmt_prec(f, own)?;
                b.fmt_prec(f, own)?;
            }
            Node::Star(a) | Node::Plus(a) | Node::Optional(a) => {
                let postfix_arg = matches!(**a, Node::Union(..) | Node::Concat(..));
                if postfix_arg {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 2)?;
                if postfix_arg {
                    write!(f, ")")?;
                }
                let op = match self {
                    Node::Star(_) => '*',
                    Node::Plus(_) => '+',
                    _ => '?',
                };
                write!(f, "{op}")?;
            }
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

fn star_matches(a: &Node, word: &[char]) -> bool {
    word.is_empty() || (1..=word.len()).any(|i| a.matches(&word[..i]) && star_matches(a, &word[i..]))
}

/// A parsed regular expression together with its declared alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegexAst {
    pub root: Node,
    pub alphabet: Alphabet,
}

impl RegexAst {
    pub fn new(root: Node, alphabet: Alphabet) -> Result<Self> {
        fn check(n: &Node, alphabet: &Alphabet) -> Result<()> {
            match n {
                Node::Letter(c) if !alphabet.contains(*c) => Err(Error::LetterOutsideAlphabet { letter: *c, pos: 0 }),
                Node::Concat(a, b) | Node::Union(a, b) => {
                    check(a, alphabet)?;
                    check(b, alphabet)
                }
                Node::Star(a) | Node::Plus(a) | Node::Optional(a) => check(a, alphabet),
                _ => Ok(()),
            }
        }
        check(&root, &alphabet)?;
        Ok(RegexAst { root, alphabet })
    }

    pub fn matches(&self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        self.root.matches(&w)
    }
}

pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<RegexAst> {
    let mut p = Parser {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        end: text.len(),
        alphabet,
    };
    if p.chars.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty pattern; use %e for the empty word and %0 for the empty language".into(),
        });
    }
    let root = p.expr()?;
    if let Some(&(pos, c)) = p.chars.get(p.pos) {
        return Err(Error::Syntax { pos, msg: format!("unexpected '{c}'") });
    }
    Ok(RegexAst { root, alphabet: alphabet.clone() })
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn expr(&mut self) -> Result<Node> {
        let mut node = self.term()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            node = Node::union(node, self.term()?);
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Node> {
        let mut node = self.factor()?;
        while matches!(self.peek(), Some(c) if c != '|' && c != ')') {
            node = Node::concat(node, self.factor()?);
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Node> {
        let mut node = self.base()?;
        loop {
            node = match self.peek() {
                Some('*') => Node::star(node),
                Some('+') => Node::plus(node),
                Some('?') => Node::optional(node),
                _ => return Ok(node),
            };
            self.pos += 1;
        }
    }

    fn base(&mut self) -> Result<Node> {
        let pos = self.offset();
        let Some(c) = self.peek() else {
            return Err(Error::Syntax { pos, msg: "unexpected end of pattern".into() });
        };
        self.pos += 1;
        match c {
            '(' => {
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Syntax { pos: self.offset(), msg: "expected ')'".into() });
                }
                self.pos += 1;
                Ok(inner)
            }
            '%' => match self.peek() {
                Some('e') => {
                    self.pos += 1;
                    Ok(Node::Epsilon)
                }
                Some('0') => {
                    self.pos += 1;
                    Ok(Node::Empty)
                }
                _ => Err(Error::Syntax { pos, msg: "expected %e or %0".into() }),
            },
            '|' | ')' | '*' | '+' | '?' => Err(Error::Syntax { pos, msg: format!("unexpected '{c}'") }),
            c if self.alphabet.contains(c) => Ok(Node::Letter(c)),
            c => Err(Error::LetterOutsideAlphabet { letter: c, pos }),
        }
    }
}

/// Derivative terms kept in similarity normal form: unions are flattened,
/// sorted and deduplicated, concatenation is right-associated, and the unit
/// and annihilator laws are applied eagerly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Re {
    Empty,
    Eps,
    Sym(usize),
    Cat(Rc<Re>, Rc<Re>),
    Alt(Vec<Rc<Re>>),
    Star(Rc<Re>),
}

fn empty() -> Rc<Re> {
    Rc::new(Re::Empty)
}

fn eps() -> Rc<Re> {
    Rc::new(Re::Eps)
}

fn cat(a: Rc<Re>, b: Rc<Re>) -> Rc<Re> {
    match (&*a, &*b) {
        (Re::Empty, _) | (_, Re::Empty) => empty(),
        (Re::Eps, _) => b,
        (_, Re::Eps) => a,
        (Re::Cat(x, y), _) => cat(x.clone(), cat(y.clone(), b)),
        _ => Rc::new(Re::Cat(a, b)),
    }
}

fn alt(items: impl IntoIterator<Item = Rc<Re>>) -> Rc<Re> {
    let mut flat = Vec::new();
    for it in items {
        match &*it {
            Re::Empty => {}
            Re::Alt(xs) => flat.extend(xs.iter().cloned()),
            _ => flat.push(it),
        }
    }
    flat.sort();
    flat.dedup();
    match flat.len() {
        0 => empty(),
        1 => flat.pop().unwrap(),
        _ => Rc::new(Re::Alt(flat)),
    }
}

fn star(a: Rc<Re>) -> Rc<Re> {
    match &*a {
        Re::Empty | Re::Eps => eps(),
        Re::Star(_) => a,
        _ => Rc::new(Re::Star(a)),
    }
}

impl Re {
    fn from_node(n: &Node, alphabet: &Alphabet) -> Rc<Re> {
        match n {
            Node::Empty => empty(),
            Node::Epsilon => eps(),
            Node::Letter(c) => Rc::new(Re::Sym(alphabet.index_of(*c).expect("validated letter"))),
            Node::Concat(a, b) => cat(Re::from_node(a, alphabet), Re::from_node(b, alphabet)),
            Node::Union(a, b) => alt([Re::from_node(a, alphabet), Re::from_node(b, alphabet)]),
            Node::Star(a) => star(Re::from_node(a, alphabet)),
            Node::Plus(_) | Node::Optional(_) => Re::from_node(&n.desugar(), alphabet),
        }
    }

    fn nullable(&self) -> bool {
        match self {
            Re::Empty | Re::Sym(_) => false,
            Re::Eps | Re::Star(_) => true,
            Re::Cat(a, b) => a.nullable() && b.nullable(),
            Re::Alt(xs) => xs.iter().any(|x| x.nullable()),
        }
    }

    fn derive(self: &Rc<Self>, a: usize) -> Rc<Re> {
        match &**self {
            Re::Empty | Re::Eps => empty(),
            Re::Sym(b) => {
                if *b == a {
                    eps()
                } else {
                    empty()
                }
            }
            Re::Cat(x, y) => {
                let left = cat(x.derive(a), y.clone());
                if x.nullable() {
                    alt([left, y.derive(a)])
                } else {
                    left
                }
            }
            Re::Alt(xs) => alt(xs.iter().map(|x| x.derive(a))),
            Re::Star(x) => cat(x.derive(a), self.clone()),
        }
    }

    /// Concatenation factors of a right-associated chain.
    fn factors(self: &Rc<Self>) -> Vec<Rc<Re>> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        loop {
            match &*cur {
                Re::Cat(x, y) => {
                    out.push(x.clone());
                    let next = y.clone();
                    cur = next;
                }
                _ => {
                    out.push(cur);
                    return out;
                }
            }
        }
    }

    fn render(self: &Rc<Self>, alphabet: &Alphabet, prec: u8, out: &mut String) {
        match &**self {
            Re::Empty => out.push_str("%0"),
            Re::Eps => out.push_str("%e"),
            Re::Sym(a) => out.push(alphabet.letter(*a)),
            Re::Alt(xs) => {
                if prec > 0 {
                    out.push('(');
                }
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        out.push('|');
                    }
                    x.render(alphabet, 1, out);
                }
                if prec > 0 {
                    out.push(')');
                }
            }
            Re::Star(x) => {
                render_atomic(x, alphabet, out);
                out.push('*');
            }
            Re::Cat(..) => {
                if prec > 1 {
                    out.push('(');
                }
                // fold `x x*` into `x+`
                let fs = self.factors();
                let mut pieces: Vec<(Vec<Rc<Re>>, Option<char>)> = Vec::new();
                for f in fs {
                    if let Re::Star(inner) = &*f {
                        let body = inner.factors();
                        let m = body.len();
                        let tail: Vec<&Rc<Re>> = pieces
                            .iter()
                            .rev()
                            .take_while(|(_, op)| op.is_none())
                            .flat_map(|(v, _)| v.iter().rev())
                            .take(m)
                            .collect();
                        if tail.len() == m && tail.iter().rev().zip(&body).all(|(x, y)| *x == y) {
                            let mut removed = 0;
                            while removed < m {
                                let (v, _) = pieces.pop().unwrap();
                                removed += v.len();
                            }
                            pieces.push((vec![inner.clone()], Some('+')));
                            continue;
                        }
                    }
                    pieces.push((vec![f], None));
                }
                for (v, op) in pieces {
                    match op {
                        Some(c) => {
                            render_atomic(&v[0], alphabet, out);
                            out.push(c);
                        }
                        None => v[0].render(alphabet, 2, out),
                    }
                }
                if prec > 1 {
                    out.push(')');
                }
            }
        }
    }
}

fn render_atomic(x: &Rc<Re>, alphabet: &Alphabet, out: &mut String) {
    match &**x {
        Re::Cat(..) | Re::Alt(..) => {
            out.push('(');
            x.render(alphabet, 0, out);
            out.push(')');
        }
        _ => x.render(alphabet, 2, out),
    }
}

/// Builds the canonical (minimal complete) automaton of the expression.
///
/// States are labelled by a derivative expression denoting the residual
/// language they accept.
pub fn compile_canonical_dfa(ast: &RegexAst, max_states: usize) -> Result<Dfa> {
    let alphabet = &ast.alphabet;
    let k = alphabet.len();
    let start = Re::from_node(&ast.root, alphabet);
    let mut index: HashMap<Rc<Re>, usize> = HashMap::new();
    let mut exprs = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < exprs.len() {
        let e = exprs[i].clone();
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let d = e.derive(a);
            let id = match index.get(&d) {
                Some(&id) => id,
                None => {
                    if exprs.len() >= max_states {
                        return Err(Error::BudgetExceeded { what: "state", limit: max_states });
                    }
                    exprs.push(d.clone());
                    index.insert(d, exprs.len() - 1);
                    exprs.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let finals = exprs.iter().map(|e| e.nullable()).collect();
    let labels = exprs
        .iter()
        .map(|e| {
            let mut s = String::new();
            e.render(alphabet, 0, &mut s);
            s
        })
        .collect();
    let dfa = Dfa::from_parts_labeled(alphabet.clone(), delta, 0, finals, Some(labels))?;
    Ok(dfa.minimize())
}
