//! Run configuration and rendering of automata, algebras and reversibility
//! verdicts as DOT, JSON or plain-text tables.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::atoms::{AtomSet, ProfileTable};
use crate::canonical::{build_lattice_automaton, build_meet_automaton, AtomAutomaton, HasseDiagram};
use crate::config::{Budgets, Language};
use crate::dfa::{dot_escape, Dfa};
use crate::error::{Error, Result};
use crate::reversibility::{is_reversible, ForbiddenWitness, IdentityCounterexample, ReversibilityReport};
use crate::syntactic::{syntactic_lattice_algebra, syntactic_monoid, syntactic_semiring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutomatonLevel {
    Dfa,
    Meet,
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraLevel {
    Monoid,
    Semiring,
    Lattice,
}

fn unknown(kind: &str, s: &str) -> Error {
    Error::Syntax { pos: 0, msg: format!("unknown {kind} '{s}'") }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            _ => Err(unknown("format", s)),
        }
    }
}

impl FromStr for AutomatonLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dfa" => Ok(AutomatonLevel::Dfa),
            "meet" => Ok(AutomatonLevel::Meet),
            "lattice" => Ok(AutomatonLevel::Lattice),
            _ => Err(unknown("automaton level", s)),
        }
    }
}

impl FromStr for AlgebraLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monoid" => Ok(AlgebraLevel::Monoid),
            "semiring" => Ok(AlgebraLevel::Semiring),
            "lattice" => Ok(AlgebraLevel::Lattice),
            _ => Err(unknown("algebra level", s)),
        }
    }
}

impl AutomatonLevel {
    pub fn name(self) -> &'static str {
        match self {
            AutomatonLevel::Dfa => "dfa",
            AutomatonLevel::Meet => "meet",
            AutomatonLevel::Lattice => "lattice",
        }
    }
}

impl AlgebraLevel {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraLevel::Monoid => "monoid",
            AlgebraLevel::Semiring => "semiring",
            AlgebraLevel::Lattice => "lattice",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub alphabet: String,
    pub regex: String,
    pub budgets: Budgets,
    pub format: Format,
    pub suppress_derivable_columns: bool,
}

impl RunConfig {
    pub fn new(regex: &str, alphabet: &str, format: Format) -> RunConfig {
        RunConfig {
            alphabet: alphabet.to_string(),
            regex: regex.to_string(),
            budgets: Budgets::default(),
            format,
            suppress_derivable_columns: false,
        }
    }

    pub fn language(&self) -> Result<Language> {
        let b = &self.budgets;
        if b.states == 0 || b.profiles == 0 || b.elements == 0 || b.quadruples == 0 {
            return Err(Error::Syntax { pos: 0, msg: "budgets must be positive".into() });
        }
        Language::new(&self.regex, &self.alphabet, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRecord {
    pub id: usize,
    pub label: String,
    #[serde(rename = "final")]
    pub is_final: bool,
    pub atomset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub id: usize,
    pub witness: String,
    /// Image of each canonical-automaton state, as profile indices.
    pub images: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Tables {
    pub mul: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
}

/// The JSON document for automata and algebras. For algebras, `hasse`
/// holds element covers; for automata, state covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub alphabet: String,
    pub regex: String,
    pub level: String,
    pub states: Vec<StateRecord>,
    pub transitions: Vec<(usize, char, usize)>,
    pub hasse: Vec<(usize, usize)>,
    pub elements: Vec<ElementRecord>,
    pub tables: Tables,
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Document> {
        serde_json::from_str(text).map_err(|e| Error::Syntax { pos: e.column(), msg: e.to_string() })
    }

    /// The automaton described by `states` and `transitions`, started at
    /// state 0.
    pub fn to_dfa(&self) -> Result<Dfa> {
        let alphabet = Alphabet::new(&self.alphabet)?;
        let mut delta = vec![vec![usize::MAX; alphabet.len()]; self.states.len()];
        for &(from, c, to) in &self.transitions {
            let a = alphabet.index_of(c).ok_or(Error::UnknownLetter(c))?;
            *delta
                .get_mut(from)
                .and_then(|row| row.get_mut(a))
                .ok_or_else(|| Error::InvalidAutomaton(format!("state {from} out of range")))? = to;
        }
        let finals = self.states.iter().map(|s| s.is_final).collect();
        let labels = self.states.iter().map(|s| s.label.clone()).collect();
        Dfa::from_parts_labeled(alphabet, delta, 0, finals, Some(labels))
    }
}

/// States of a level's automaton as atom sets, labels and transitions.
struct StateView {
    sets: Vec<AtomSet>,
    labels: Vec<String>,
    finals: Vec<bool>,
    delta: Vec<Vec<usize>>,
    initial: usize,
    order: HasseDiagram,
}

fn dfa_view(l: &Language) -> StateView {
    let sets: Vec<AtomSet> = l.dfa.states().map(|q| l.table.residual_atoms(q)).collect();
    let order = crate::canonical::hasse(&sets);
    StateView {
        labels: l.dfa.labels(),
        finals: l.dfa.states().map(|q| l.dfa.is_final(q)).collect(),
        delta: l.dfa.transition_table(),
        initial: l.dfa.initial().index(),
        sets,
        order,
    }
}

fn atom_view(a: &AtomAutomaton) -> StateView {
    let k = a.alphabet().len();
    StateView {
        sets: a.states().to_vec(),
        labels: a.labels().to_vec(),
        finals: (0..a.num_states()).map(|i| a.is_final(i)).collect(),
        delta: (0..a.num_states()).map(|i| (0..k).map(|c| a.step(i, c)).collect()).collect(),
        initial: a.initial(),
        order: a.order().clone(),
    }
}

fn state_records(v: &StateView) -> Vec<StateRecord> {
    (0..v.sets.len())
        .map(|i| StateRecord {
            id: i,
            label: v.labels[i].clone(),
            is_final: v.finals[i],
            atomset: v.sets[i].profiles(),
        })
        .collect()
}

fn transitions(v: &StateView, alphabet: &Alphabet) -> Vec<(usize, char, usize)> {
    let mut out = Vec::new();
    for (i, row) in v.delta.iter().enumerate() {
        for (a, &to) in row.iter().enumerate() {
            out.push((i, alphabet.letter(a), to));
        }
    }
    out
}

fn automaton_view(l: &Language, level: AutomatonLevel, budgets: &Budgets) -> Result<StateView> {
    Ok(match level {
        AutomatonLevel::Dfa => dfa_view(l),
        AutomatonLevel::Meet => atom_view(&build_meet_automaton(&l.table, &l.dfa, budgets.states)?),
        AutomatonLevel::Lattice => atom_view(&build_lattice_automaton(&l.table, &l.dfa, budgets.states)?),
    })
}

fn automaton_dot(name: &str, v: &StateView, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  start [shape=point];");
    for (i, label) in v.labels.iter().enumerate() {
        let shape = if v.finals[i] { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{i} [label=\"{}\", shape={shape}];", dot_escape(label));
    }
    let _ = writeln!(out, "  start -> q{};", v.initial);
    for (i, row) in v.delta.iter().enumerate() {
        for (a, &to) in row.iter().enumerate() {
            let _ = writeln!(out, "  q{i} -> q{to} [label=\"{}\"];", dot_escape(&alphabet.letter(a).to_string()));
        }
    }
    for &(lo, hi) in &v.order.covers {
        let _ = writeln!(out, "  q{lo} -> q{hi} [style=dashed, arrowhead=none, constraint=false];");
    }
    out.push_str("}\n");
    out
}

/// Left-aligned columns separated by two spaces.
fn render_table(header: &[String], rows: &[Vec<String>]) -> String {
    let width =
        |c: usize| rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0);
    let widths: Vec<usize> = (0..header.len()).map(width).collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    out += &line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
    for r in rows {
        out += &line(r);
    }
    out
}

/// Renders the canonical automaton, meet automaton or lattice automaton.
pub fn cmd_automaton(cfg: &RunConfig, level: AutomatonLevel) -> Result<String> {
    let l = cfg.language()?;
    let v = automaton_view(&l, level, &cfg.budgets)?;
    let alphabet = l.alphabet();
    Ok(match cfg.format {
        Format::Dot if level == AutomatonLevel::Dfa => l.dfa.to_dot(),
        Format::Dot => automaton_dot(level.name(), &v, alphabet),
        Format::Json => Document {
            alphabet: alphabet.as_string(),
            regex: cfg.regex.clone(),
            level: level.name().to_string(),
            states: state_records(&v),
            transitions: transitions(&v, alphabet),
            hasse: v.order.covers.clone(),
            elements: Vec::new(),
            tables: Tables::default(),
        }
        .to_json(),
        Format::Table => {
            let mut header = vec!["id".to_string(), "state".to_string(), "final".to_string()];
            header.extend(alphabet.letters().iter().map(|c| c.to_string()));
            let rows: Vec<Vec<String>> = (0..v.sets.len())
                .map(|i| {
                    let mut r = vec![
                        i.to_string(),
                        format!("{}{}", if i == v.initial { "->" } else { "" }, v.labels[i]),
                        if v.finals[i] { "*".into() } else { String::new() },
                    ];
                    r.extend(v.delta[i].iter().map(|&t| v.labels[t].clone()));
                    r
                })
                .collect();
            render_table(&header, &rows)
        }
    })
}

/// One algebra, normalized for rendering.
struct AlgebraView {
    view: StateView,
    witnesses: Vec<String>,
    /// Per element, the level-automaton state reached from each
    /// canonical-automaton state.
    images: Vec<Vec<usize>>,
    /// Per element, the image of every level-automaton state.
    state_images: Vec<Vec<usize>>,
    /// Level-automaton index of each canonical-automaton state.
    residual_index: Vec<usize>,
    order: HasseDiagram,
    tables: Tables,
    /// Right multiplication by letters, for the monoid's Cayley graph.
    cayley: Vec<Vec<usize>>,
}

fn algebra_view(l: &Language, level: AlgebraLevel, budgets: &Budgets) -> Result<AlgebraView> {
    let residual_index_in = |a: &AtomAutomaton| -> Vec<usize> {
        l.dfa.states().map(|q| a.index_of(l.table.residual(q)).expect("residuals are states")).collect()
    };
    Ok(match level {
        AlgebraLevel::Monoid => {
            let m = syntactic_monoid(&l.dfa, budgets.elements)?;
            let images: Vec<Vec<usize>> = m.elements().iter().map(|e| e.map.clone()).collect();
            let k = l.alphabet().len();
            let cayley = (0..m.len()).map(|e| (0..k).map(|a| m.multiply(e, m.generator(a))).collect()).collect();
            AlgebraView {
                view: dfa_view(l),
                witnesses: m.elements().iter().map(|e| e.witness.to_string()).collect(),
                state_images: images.clone(),
                images,
                residual_index: (0..l.dfa.num_states()).collect(),
                order: HasseDiagram::default(),
                tables: Tables { mul: m.cayley_table(), ..Tables::default() },
                cayley,
            }
        }
        AlgebraLevel::Semiring => {
            let s = syntactic_semiring(&l.table, &l.dfa, budgets)?;
            let nm = s.automaton().num_states();
            AlgebraView {
                view: atom_view(s.automaton()),
                witnesses: s.elements().iter().map(|e| e.witness.to_string()).collect(),
                images: s.elements().iter().map(|e| e.images.clone()).collect(),
                state_images: (0..s.len()).map(|e| (0..nm).map(|x| s.state_image(e, x)).collect()).collect(),
                residual_index: residual_index_in(s.automaton()),
                order: s.order().clone(),
                tables: Tables { mul: s.mul_table().to_vec(), meet: s.meet_table().to_vec(), join: Vec::new() },
                cayley: Vec::new(),
            }
        }
        AlgebraLevel::Lattice => {
            let a = syntactic_lattice_algebra(&l.table, &l.dfa, budgets)?;
            let nl = a.automaton().num_states();
            let n = a.len();
            let t = a.tables();
            AlgebraView {
                view: atom_view(a.automaton()),
                witnesses: a.elements().iter().map(|e| e.witness.to_string()).collect(),
                images: a.elements().iter().map(|e| e.images.clone()).collect(),
                state_images: (0..n).map(|e| (0..nl).map(|x| a.state_image(e, x)).collect()).collect(),
                residual_index: residual_index_in(a.automaton()),
                order: a.order().clone(),
                tables: Tables { mul: t.mul, meet: t.meet, join: t.join },
                cayley: Vec::new(),
            }
        }
    })
}

/// Columns of the element table: all level-automaton states, or only the
/// residuals other than `∅` and `A*`.
fn table_columns(av: &AlgebraView, table: &ProfileTable, suppress: bool) -> Vec<usize> {
    if !suppress {
        return (0..av.view.sets.len()).collect();
    }
    av.residual_index
        .iter()
        .copied()
        .filter(|&x| {
            let s = &av.view.sets[x];
            !s.is_empty() && *s != table.top()
        })
        .collect()
}

/// Renders the syntactic monoid, semiring or lattice algebra.
pub fn cmd_algebra(cfg: &RunConfig, level: AlgebraLevel) -> Result<String> {
    let l = cfg.language()?;
    let av = algebra_view(&l, level, &cfg.budgets)?;
    let alphabet = l.alphabet();
    Ok(match cfg.format {
        Format::Json => Document {
            alphabet: alphabet.as_string(),
            regex: cfg.regex.clone(),
            level: level.name().to_string(),
            states: state_records(&av.view),
            transitions: transitions(&av.view, alphabet),
            hasse: av.order.covers.clone(),
            elements: av
                .images
                .iter()
                .enumerate()
                .map(|(id, imgs)| ElementRecord {
                    id,
                    witness: av.witnesses[id].clone(),
                    images: imgs.iter().map(|&x| av.view.sets[x].profiles()).collect(),
                })
                .collect(),
            tables: av.tables.clone(),
        }
        .to_json(),
        Format::Table => {
            let columns = table_columns(&av, &l.table, cfg.suppress_derivable_columns);
            let mut header = vec!["element".to_string()];
            header.extend(columns.iter().map(|&x| av.view.labels[x].clone()));
            let rows: Vec<Vec<String>> = av
                .state_images
                .iter()
                .enumerate()
                .map(|(e, imgs)| {
                    let mut r = vec![av.witnesses[e].clone()];
                    r.extend(columns.iter().map(|&x| av.view.labels[imgs[x]].clone()));
                    r
                })
                .collect();
            render_table(&header, &rows)
        }
        Format::Dot => {
            let mut out = String::new();
            let _ = writeln!(out, "digraph {} {{", level.name());
            for (i, w) in av.witnesses.iter().enumerate() {
                let _ = writeln!(out, "  e{i} [label=\"{}\", shape=box];", dot_escape(w));
            }
            if level == AlgebraLevel::Monoid {
                for (e, row) in av.cayley.iter().enumerate() {
                    for (a, &f) in row.iter().enumerate() {
                        let _ = writeln!(out, "  e{e} -> e{f} [label=\"{}\"];", alphabet.letter(a));
                    }
                }
            } else {
                let _ = writeln!(out, "  rankdir=BT;");
                for &(lo, hi) in &av.order.covers {
                    let _ = writeln!(out, "  e{lo} -> e{hi} [arrowhead=none];");
                }
            }
            out.push_str("}\n");
            out
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub f: usize,
    pub g: usize,
    pub h: usize,
    pub f_label: String,
    pub g_label: String,
    pub h_label: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub p: String,
    pub u: String,
    pub v: String,
    pub w: String,
    pub state: usize,
    pub state_label: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub reversible: bool,
    pub witness: Option<WitnessRecord>,
    pub identity_counterexample: Option<CounterexampleRecord>,
    pub constructed_counterexample: Option<CounterexampleRecord>,
}

fn witness_record(dfa: &Dfa, w: &ForbiddenWitness) -> WitnessRecord {
    WitnessRecord {
        f: w.f.index(),
        g: w.g.index(),
        h: w.h.index(),
        f_label: dfa.label(w.f),
        g_label: dfa.label(w.g),
        h_label: dfa.label(w.h),
        x: w.x.to_string(),
        y: w.y.to_string(),
    }
}

fn counterexample_record(dfa: &Dfa, c: &IdentityCounterexample) -> CounterexampleRecord {
    CounterexampleRecord {
        p: c.p.to_string(),
        u: c.u.to_string(),
        v: c.v.to_string(),
        w: c.w.to_string(),
        state: c.state.index(),
        state_label: dfa.label(c.state),
        left: c.left.profiles(),
        right: c.right.profiles(),
    }
}

pub fn verdict_record(dfa: &Dfa, r: &ReversibilityReport) -> VerdictRecord {
    VerdictRecord {
        reversible: r.reversible,
        witness: r.witness.as_ref().map(|w| witness_record(dfa, w)),
        identity_counterexample: r.identity_counterexample.as_ref().map(|c| counterexample_record(dfa, c)),
        constructed_counterexample: r.constructed_counterexample.as_ref().map(|c| counterexample_record(dfa, c)),
    }
}

/// Renders the reversibility verdict: text for `table`, JSON otherwise.
pub fn cmd_reversible(cfg: &RunConfig) -> Result<String> {
    let l = cfg.language()?;
    let report = is_reversible(&l.dfa, &l.table, &cfg.budgets)?;
    let record = verdict_record(&l.dfa, &report);
    if cfg.format != Format::Table {
        let mut s = serde_json::to_string_pretty(&record).expect("verdict serializes");
        s.push('\n');
        return Ok(s);
    }
    let mut out = format!("reversible: {}\n", record.reversible);
    if let Some(w) = &record.witness {
        let _ = writeln!(
            out,
            "forbidden configuration: f={} g={} h={} x={} y={}",
            w.f_label, w.g_label, w.h_label, w.x, w.y
        );
    }
    for (name, c) in [
        ("identity counterexample", &record.identity_counterexample),
        ("constructed counterexample", &record.constructed_counterexample),
    ] {
        if let Some(c) = c {
            let _ = writeln!(out, "{name}: p={} u={} v={} w={} at {}", c.p, c.u, c.v, c.w, c.state_label);
        }
    }
    Ok(out)
}
