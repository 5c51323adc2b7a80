//! Terms over letters with `·`, `∧`, `∨`, `λ`, `⊤`, `⊥`, their action on
//! languages by left quotients, and their normal forms in the free monoid,
//! the free idempotent semiring and the free bounded distributive lattice
//! over the alphabet.
//!
//! Text syntax: letters, `^` for `∧`, `v` for `∨`, juxtaposition or `.` for
//! `·`, `T` for `⊤`, `_` for `⊥`, `%e` for `λ`, parentheses. `∨` binds
//! loosest, then `∧`, then `·`.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::Alphabet;
use crate::atoms::{build_profile_table, AtomSet, ProfileTable};
use crate::dfa::Dfa;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Letter(char),
    Lambda,
    Top,
    Bottom,
    Concat(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

/// Signatures ordered by inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Signature {
    Monoid,
    Semiring,
    Lattice,
}

impl Signature {
    pub fn name(self) -> &'static str {
        match self {
            Signature::Monoid => "monoid",
            Signature::Semiring => "semiring",
            Signature::Lattice => "lattice",
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Term {
    pub fn concat(a: Term, b: Term) -> Term {
        Term::Concat(Box::new(a), Box::new(b))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    /// Right-combed product of the letters of `word`, `λ` if empty.
    pub fn word(word: &str) -> Term {
        let mut letters: Vec<Term> = word.chars().map(Term::Letter).collect();
        let Some(mut t) = letters.pop() else {
            return Term::Lambda;
        };
        while let Some(l) = letters.pop() {
            t = Term::concat(l, t);
        }
        t
    }

    /// Smallest signature containing every operation of the term.
    pub fn signature(&self) -> Signature {
        match self {
            Term::Letter(_) | Term::Lambda => Signature::Monoid,
            Term::Top => Signature::Semiring,
            Term::Bottom => Signature::Lattice,
            Term::Concat(a, b) => a.signature().max(b.signature()),
            Term::Meet(a, b) => a.signature().max(b.signature()).max(Signature::Semiring),
            Term::Join(..) => Signature::Lattice,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Letter(_) | Term::Lambda | Term::Top | Term::Bottom => 1,
            Term::Concat(a, b) | Term::Meet(a, b) | Term::Join(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn letters_into(&self, out: &mut BTreeSet<char>) {
        match self {
            Term::Letter(c) => {
                out.insert(*c);
            }
            Term::Lambda | Term::Top | Term::Bottom => {}
            Term::Concat(a, b) | Term::Meet(a, b) | Term::Join(a, b) => {
                a.letters_into(out);
                b.letters_into(out);
            }
        }
    }

    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.letters_into(&mut out);
        out
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        let (own, parts) = match self {
            Term::Letter(c) => return write!(f, "{c}"),
            Term::Lambda => return f.write_str("%e"),
            Term::Top => return f.write_str("T"),
            Term::Bottom => return f.write_str("_"),
            Term::Join(a, b) => (0, (a, b, "v")),
            Term::Meet(a, b) => (1, (a, b, "^")),
            Term::Concat(a, b) => (2, (a, b, ".")),
        };
        if own < prec {
            f.write_str("(")?;
        }
        parts.0.fmt_prec(f, own)?;
        f.write_str(parts.2)?;
        parts.1.fmt_prec(f, own + 1)?;
        if own < prec {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

const TERM_RESERVED: [char; 3] = ['v', 'T', '_'];

/// Parses the text syntax of terms. Letters must belong to `alphabet`, which
/// may not contain `v`, `T` or `_`.
pub fn parse_term(text: &str, alphabet: &Alphabet) -> Result<Term> {
    if let Some(&c) = alphabet.letters().iter().find(|c| TERM_RESERVED.contains(c)) {
        return Err(Error::InvalidAlphabet(format!("letter '{c}' is reserved in term syntax")));
    }
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = TermParser { chars, pos: 0, alphabet, len: text.len() };
    if p.chars.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty term".into() });
    }
    let t = p.join()?;
    if p.pos < p.chars.len() {
        return Err(Error::Syntax { pos: p.chars[p.pos].0, msg: format!("unexpected '{}'", p.chars[p.pos].1) });
    }
    Ok(t)
}

struct TermParser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a Alphabet,
    len: usize,
}

impl TermParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn join(&mut self) -> Result<Term> {
        let mut t = self.meet()?;
        while self.peek() == Some('v') {
            self.pos += 1;
            t = Term::join(t, self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            t = Term::meet(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        loop {
            match self.peek() {
                Some('.') => {
                    self.pos += 1;
                    t = Term::concat(t, self.atom()?);
                }
                Some(c) if c.is_ascii_graphic() && !"v^.)".contains(c) => {
                    t = Term::concat(t, self.atom()?);
                }
                _ => return Ok(t),
            }
        }
    }

    fn atom(&mut self) -> Result<Term> {
        let pos = self.offset();
        let Some(c) = self.peek() else {
            return Err(Error::Syntax { pos, msg: "unexpected end of term".into() });
        };
        self.pos += 1;
        match c {
            '(' => {
                let t = self.join()?;
                if self.peek() != Some(')') {
                    return Err(Error::Syntax { pos: self.offset(), msg: "expected ')'".into() });
                }
                self.pos += 1;
                Ok(t)
            }
            '%' => {
                if self.peek() == Some('e') {
                    self.pos += 1;
                    Ok(Term::Lambda)
                } else {
                    Err(Error::Syntax { pos, msg: "expected '%e'".into() })
                }
            }
            'T' => Ok(Term::Top),
            '_' => Ok(Term::Bottom),
            c if self.alphabet.contains(c) => Ok(Term::Letter(c)),
            c if c.is_ascii_alphanumeric() => Err(Error::LetterOutsideAlphabet { letter: c, pos }),
            c => Err(Error::Syntax { pos, msg: format!("unexpected '{c}'") }),
        }
    }
}

/// A word, ordered shortlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<char>);

impl Word {
    pub fn new(letters: &str) -> Word {
        Word(letters.chars().collect())
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn as_string(&self) -> String {
        self.0.iter().collect()
    }

    pub fn to_term(&self) -> Term {
        Term::word(&self.as_string())
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Word {
        Word::new(s)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("%e")
        } else {
            f.write_str(&self.as_string())
        }
    }
}

/// Element of the free idempotent semiring: a meet of words. Empty is `⊤`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MeetForm(BTreeSet<Word>);

impl MeetForm {
    pub fn top() -> MeetForm {
        MeetForm(BTreeSet::new())
    }

    pub fn word(w: Word) -> MeetForm {
        MeetForm(BTreeSet::from([w]))
    }

    pub fn from_words<I: IntoIterator<Item = W>, W: Into<Word>>(words: I) -> MeetForm {
        MeetForm(words.into_iter().map(Into::into).collect())
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_top(&self) -> bool {
        self.0.is_empty()
    }

    pub fn meet(&self, other: &MeetForm) -> MeetForm {
        MeetForm(self.0.union(&other.0).cloned().collect())
    }

    /// Product in the free idempotent semiring; `⊤` is a zero.
    pub fn multiply(&self, other: &MeetForm) -> MeetForm {
        MeetForm(self.0.iter().flat_map(|u| other.0.iter().map(move |v| u.concat(v))).collect())
    }

    pub fn append(&self, w: &Word) -> MeetForm {
        MeetForm(self.0.iter().map(|u| u.concat(w)).collect())
    }

    pub fn is_subset(&self, other: &MeetForm) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Total number of letters.
    pub fn weight(&self) -> usize {
        self.0.iter().map(Word::len).sum()
    }

    /// Letter count and word count.
    pub fn size_key(&self) -> (usize, usize) {
        (self.weight(), self.len())
    }

    pub fn to_term(&self) -> Term {
        let mut words: Vec<Term> = self.0.iter().map(Word::to_term).collect();
        let Some(mut t) = words.pop() else {
            return Term::Top;
        };
        while let Some(w) = words.pop() {
            t = Term::meet(w, t);
        }
        t
    }

    pub fn to_lattice(&self) -> LatticeForm {
        LatticeForm(BTreeSet::from([self.clone()]))
    }
}

impl fmt::Display for MeetForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("T");
        }
        let parts: Vec<String> = self.0.iter().map(Word::to_string).collect();
        f.write_str(&parts.join("^"))
    }
}

/// Element of the free bounded distributive lattice over words: a join of
/// pairwise incomparable meets. Empty is `⊥`, `{∅}` is `⊤`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeForm(BTreeSet<MeetForm>);

impl LatticeForm {
    pub fn bottom() -> LatticeForm {
        LatticeForm(BTreeSet::new())
    }

    pub fn top() -> LatticeForm {
        MeetForm::top().to_lattice()
    }

    pub fn word(w: Word) -> LatticeForm {
        MeetForm::word(w).to_lattice()
    }

    /// Canonical form of the join of the given meets.
    pub fn from_meets(meets: impl IntoIterator<Item = MeetForm>) -> LatticeForm {
        reduce(meets.into_iter().collect())
    }

    pub fn meets(&self) -> impl Iterator<Item = &MeetForm> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_bottom(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.0.len() == 1 && self.0.iter().next().is_some_and(MeetForm::is_top)
    }

    pub fn contains_meet(&self, m: &MeetForm) -> bool {
        self.0.contains(m)
    }

    pub fn join(&self, other: &LatticeForm) -> LatticeForm {
        reduce(self.0.union(&other.0).cloned().collect())
    }

    pub fn meet(&self, other: &LatticeForm) -> LatticeForm {
        reduce(self.0.iter().flat_map(|u| other.0.iter().map(move |v| u.meet(v))).collect())
    }

    /// `𝒰·w`: appends `w` to every word.
    pub fn append(&self, w: &Word) -> LatticeForm {
        reduce(self.0.iter().map(|u| u.append(w)).collect())
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(MeetForm::weight).sum()
    }

    /// Letter count and word count.
    pub fn size_key(&self) -> (usize, usize) {
        (self.weight(), self.0.iter().map(MeetForm::len).sum())
    }

    /// Right-combed term with this normal form.
    pub fn to_term(&self) -> Term {
        let mut meets: Vec<Term> = self.0.iter().map(MeetForm::to_term).collect();
        let Some(mut t) = meets.pop() else {
            return Term::Bottom;
        };
        while let Some(m) = meets.pop() {
            t = Term::join(m, t);
        }
        t
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<LatticeForm> {
        normalize_lattice(&parse_term(text, alphabet)?)
    }
}

impl fmt::Display for LatticeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("_");
        }
        let many = self.0.len() > 1;
        let parts: Vec<String> =
            self.0.iter().map(|m| if many && m.len() > 1 { format!("({m})") } else { m.to_string() }).collect();
        f.write_str(&parts.join("v"))
    }
}

/// Drops every meet that strictly contains another.
fn reduce(meets: BTreeSet<MeetForm>) -> LatticeForm {
    let kept = meets.iter().filter(|m| !meets.iter().any(|n| n != *m && n.is_subset(m))).cloned().collect();
    LatticeForm(kept)
}

/// Right-combed term for a lattice form.
pub fn embed(form: &LatticeForm) -> Term {
    form.to_term()
}

fn signature_error(op: &'static str, signature: Signature) -> Error {
    Error::Signature { op, signature: signature.name() }
}

pub fn normalize_monoid(t: &Term) -> Result<Word> {
    match t {
        Term::Letter(c) => Ok(Word(vec![*c])),
        Term::Lambda => Ok(Word::empty()),
        Term::Concat(a, b) => Ok(normalize_monoid(a)?.concat(&normalize_monoid(b)?)),
        Term::Top | Term::Meet(..) => Err(signature_error("meet", Signature::Monoid)),
        Term::Bottom | Term::Join(..) => Err(signature_error("join", Signature::Monoid)),
    }
}

pub fn normalize_semiring(t: &Term) -> Result<MeetForm> {
    match t {
        Term::Letter(c) => Ok(MeetForm::word(Word(vec![*c]))),
        Term::Lambda => Ok(MeetForm::word(Word::empty())),
        Term::Top => Ok(MeetForm::top()),
        Term::Concat(a, b) => Ok(normalize_semiring(a)?.multiply(&normalize_semiring(b)?)),
        Term::Meet(a, b) => Ok(normalize_semiring(a)?.meet(&normalize_semiring(b)?)),
        Term::Bottom | Term::Join(..) => Err(signature_error("join", Signature::Semiring)),
    }
}

pub fn normalize_lattice(t: &Term) -> Result<LatticeForm> {
    Ok(match t {
        Term::Letter(c) => LatticeForm::word(Word(vec![*c])),
        Term::Lambda => LatticeForm::word(Word::empty()),
        Term::Top => LatticeForm::top(),
        Term::Bottom => LatticeForm::bottom(),
        Term::Concat(a, b) => multiply_lattice_forms(&normalize_lattice(a)?, &normalize_lattice(b)?),
        Term::Meet(a, b) => normalize_lattice(a)?.meet(&normalize_lattice(b)?),
        Term::Join(a, b) => normalize_lattice(a)?.join(&normalize_lattice(b)?),
    })
}

/// `𝒰·𝒱 = ∨_k ∧_l 𝒰·v_kl` for `𝒱 = ∨_k ∧_l v_kl`.
pub fn multiply_lattice_forms(u: &LatticeForm, v: &LatticeForm) -> LatticeForm {
    let mut out = LatticeForm::bottom();
    for vk in &v.0 {
        let mut m = LatticeForm::top();
        for w in &vk.0 {
            m = m.meet(&u.append(w));
        }
        out = out.join(&m);
    }
    out
}

/// `x∘t`: the action of a term on a language given as an atom set.
pub fn eval_term(pt: &ProfileTable, x: &AtomSet, t: &Term) -> Result<AtomSet> {
    if !pt.owns(x) {
        return Err(Error::TableMismatch);
    }
    eval_rec(pt, x, t)
}

fn eval_rec(pt: &ProfileTable, x: &AtomSet, t: &Term) -> Result<AtomSet> {
    Ok(match t {
        Term::Letter(c) => pt.quotient_letter(x, *c)?,
        Term::Lambda => x.clone(),
        Term::Top => pt.top(),
        Term::Bottom => pt.bottom(),
        Term::Concat(a, b) => eval_rec(pt, &eval_rec(pt, x, a)?, b)?,
        Term::Meet(a, b) => eval_rec(pt, x, a)?.meet(&eval_rec(pt, x, b)?),
        Term::Join(a, b) => eval_rec(pt, x, a)?.join(&eval_rec(pt, x, b)?),
    })
}

fn encode(pt: &ProfileTable, w: &Word) -> Result<Vec<usize>> {
    let alphabet = pt.dfa().alphabet();
    w.0.iter().map(|&c| alphabet.index_of(c).ok_or(Error::UnknownLetter(c))).collect()
}

pub fn eval_word(pt: &ProfileTable, x: &AtomSet, w: &Word) -> Result<AtomSet> {
    Ok(pt.quotient_indices(x, &encode(pt, w)?))
}

pub fn eval_meet_form(pt: &ProfileTable, x: &AtomSet, m: &MeetForm) -> Result<AtomSet> {
    let mut acc = pt.top();
    for w in &m.0 {
        acc = acc.meet(&eval_word(pt, x, w)?);
    }
    Ok(acc)
}

pub fn eval_lattice_form(pt: &ProfileTable, x: &AtomSet, form: &LatticeForm) -> Result<AtomSet> {
    let mut acc = pt.bottom();
    for m in &form.0 {
        acc = acc.join(&eval_meet_form(pt, x, m)?);
    }
    Ok(acc)
}

/// Canonical automaton and profile table of a finite language.
pub fn finite_language_table(alphabet: &Alphabet, language: &[Word]) -> Result<ProfileTable> {
    let words: Vec<String> = language.iter().map(Word::as_string).collect();
    let dfa = Dfa::from_words(alphabet, &words)?;
    build_profile_table(&dfa, crate::atoms::DEFAULT_MAX_PROFILES)
}

/// Whether `λ ∈ L∘t` for the finite language `L`.
pub fn lambda_in_action(alphabet: &Alphabet, language: &[Word], t: &Term) -> Result<bool> {
    let pt = finite_language_table(alphabet, language)?;
    let l = pt.residual_atoms(pt.dfa().initial());
    Ok(pt.contains_lambda(&eval_term(&pt, &l, t)?))
}

/// A finite language `L` with `λ ∈ L∘n1` exactly when `λ ∉ L∘n2`.
///
/// Some meet of one form is absent from the other; it is a candidate `L`.
/// If the other form also accepts it, one of its meets is a proper subset of
/// the candidate, and that subset separates instead.
pub fn separating_language(n1: &LatticeForm, n2: &LatticeForm) -> Result<Vec<Word>> {
    if n1 == n2 {
        return Err(Error::EqualForms);
    }
    let (u, v) = match n1.0.iter().find(|m| !n2.0.contains(m)) {
        Some(m) => (m, n2),
        None => (n2.0.iter().find(|m| !n1.0.contains(m)).expect("forms differ"), n1),
    };
    let chosen = match v.0.iter().find(|m| m.is_subset(u)) {
        Some(smaller) => smaller,
        None => u,
    };
    Ok(chosen.0.iter().cloned().collect())
}
