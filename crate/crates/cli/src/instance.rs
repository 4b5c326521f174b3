//! The line-oriented instance format.
//!
//! ```text
//! [instance]
//! name = s5
//! field = rational
//! dim = 2
//!
//! [alpha]
//! row 1 = 1 0
//! row 2 = 0 -1
//!
//! [bracket]
//! bracket 1 2 2 = e_1
//! bracket 2 1 2 = -e_1
//! ```
//!
//! Basis labels and indices are 1-based; every omitted tensor entry is 0.
//! Sections: `[instance]`, `[alpha]`, `[bracket]`, `[group]`,
//! `[representation]`, `[fiber]`, `[cochain NAME]`, `[deformation NAME]`,
//! `[isomorphism NAME]`, `[extension NAME]`, `[extension-map NAME]`.

use std::collections::{BTreeMap, HashMap};

use homlts_core::cohomology::Cochain;
use homlts_core::deformations::{Deformation, FormalIsomorphism};
use homlts_core::exactlin::{parse_scalar, Matrix, Scalar, Vector};
use homlts_core::extensions::{CentralExtension, Fiber};
use homlts_core::structures::{FiniteGroup, GroupAction, HomLts, Representation};
use homlts_core::tensor::checked_pow;
use homlts_core::Error as CoreError;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Where a named cochain takes its values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Adjoint,
    Representation,
    Fiber,
}

impl Space {
    pub fn keyword(self) -> &'static str {
        match self {
            Space::Adjoint => "adjoint",
            Space::Representation => "representation",
            Space::Fiber => "fiber",
        }
    }
}

#[derive(Clone, Debug)]
pub enum RepSpec {
    Adjoint,
    Explicit {
        rep: Representation,
        action: Option<GroupAction>,
    },
}

#[derive(Clone, Debug)]
pub struct NamedCochain {
    pub name: String,
    pub space: Space,
    pub cochain: Cochain,
}

#[derive(Clone, Debug)]
pub struct NamedDeformation {
    pub name: String,
    pub deformation: Deformation,
}

#[derive(Clone, Debug)]
pub struct NamedIsomorphism {
    pub name: String,
    pub from: String,
    pub to: String,
    pub iso: FormalIsomorphism,
}

#[derive(Clone, Debug)]
pub struct NamedExtension {
    pub name: String,
    pub extension: CentralExtension,
}

#[derive(Clone, Debug)]
pub struct NamedExtensionMap {
    pub name: String,
    pub from: String,
    pub to: String,
    pub map: Matrix,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: Option<String>,
    pub description: Option<String>,
    pub convention: Option<String>,
    pub lts: HomLts,
    pub action: Option<GroupAction>,
    pub representation: Option<RepSpec>,
    pub fiber: Option<Fiber>,
    pub cochains: Vec<NamedCochain>,
    pub deformations: Vec<NamedDeformation>,
    pub isomorphisms: Vec<NamedIsomorphism>,
    pub extensions: Vec<NamedExtension>,
    pub extension_maps: Vec<NamedExtensionMap>,
    /// SHA-256 of the source text.
    pub fingerprint: String,
}

impl Instance {
    pub fn dim(&self) -> usize {
        self.lts.dim()
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        self.action.as_ref().map(GroupAction::group)
    }

    pub fn deformation(&self, name: &str) -> Option<&Deformation> {
        self.deformations
            .iter()
            .find(|d| d.name == name)
            .map(|d| &d.deformation)
    }

    pub fn extension(&self, name: &str) -> Option<&CentralExtension> {
        self.extensions
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.extension)
    }

    /// Dimension of the value space of cochains in `space`, if that space
    /// is declared.
    pub fn space_dim(&self, space: Space) -> Option<usize> {
        match space {
            Space::Adjoint => Some(self.dim()),
            Space::Representation => match self.representation.as_ref()? {
                RepSpec::Adjoint => Some(self.dim()),
                RepSpec::Explicit { rep, .. } => Some(rep.target_dim()),
            },
            Space::Fiber => self.fiber.as_ref().map(Fiber::dim),
        }
    }

    /// The default complex: the declared representation, else adjoint.
    pub fn default_space(&self) -> Space {
        if self.representation.is_some() {
            Space::Representation
        } else {
            Space::Adjoint
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    text: String,
    col: usize,
}

#[derive(Clone, Debug)]
struct Entry {
    line: usize,
    key: Vec<Token>,
    value: String,
    value_col: usize,
}

impl Entry {
    fn head(&self) -> &str {
        &self.key[0].text
    }

    fn err(&self, message: impl Into<String>) -> CliError {
        CliError::syntax(self.line, self.key[0].col, message)
    }

    fn value_err(&self, message: impl Into<String>) -> CliError {
        CliError::syntax(self.line, self.value_col, message)
    }

    fn arity(&self, n: usize) -> CliResult<()> {
        if self.key.len() != n {
            return Err(self.err(format!(
                "`{}` takes {} argument(s), got {}",
                self.head(),
                n - 1,
                self.key.len() - 1
            )));
        }
        Ok(())
    }

    fn index(&self, pos: usize, bound: usize) -> CliResult<usize> {
        let tok = &self.key[pos];
        match tok.text.parse::<usize>() {
            Ok(i) if (1..=bound).contains(&i) => Ok(i - 1),
            Ok(i) => Err(CliError::syntax(
                self.line,
                tok.col,
                format!("index {i} out of range 1..={bound}"),
            )),
            Err(_) => Err(CliError::syntax(
                self.line,
                tok.col,
                format!("expected an index, found `{}`", tok.text),
            )),
        }
    }

    fn literal(&self, pos: usize, word: &str) -> CliResult<()> {
        let tok = &self.key[pos];
        if tok.text != word {
            return Err(CliError::syntax(
                self.line,
                tok.col,
                format!("expected `{word}`, found `{}`", tok.text),
            ));
        }
        Ok(())
    }

    fn count(&self) -> CliResult<usize> {
        self.value
            .parse::<usize>()
            .map_err(|_| self.value_err(format!("expected a count, found `{}`", self.value)))
    }

    fn vector(&self, dim: usize) -> CliResult<Vector> {
        parse_vector(&self.value, self.line, self.value_col, dim)
    }

    fn row(&self, len: usize) -> CliResult<Vector> {
        let toks = tokenize(&self.value, self.value_col);
        if toks.len() != len {
            return Err(self.value_err(format!(
                "row needs {len} entries, found {}",
                toks.len()
            )));
        }
        toks.iter()
            .map(|t| {
                parse_scalar(&t.text).ok_or_else(|| {
                    CliError::syntax(self.line, t.col, format!("malformed rational `{}`", t.text))
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
struct RawSection {
    kind: String,
    name: Option<String>,
    entries: Vec<Entry>,
}

impl RawSection {
    fn title(&self) -> String {
        match &self.name {
            Some(n) => format!("{} {n}", self.kind),
            None => self.kind.clone(),
        }
    }

    fn find(&self, head: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key.len() == 1 && e.head() == head)
    }

    fn reject_unknown(&self, allowed: &[&str]) -> CliResult<()> {
        match self.entries.iter().find(|e| !allowed.contains(&e.head())) {
            Some(e) => Err(e.err(format!(
                "unknown key `{}` in [{}]",
                e.head(),
                self.kind
            ))),
            None => Ok(()),
        }
    }
}

const NAMED: &[&str] = &[
    "cochain",
    "deformation",
    "isomorphism",
    "extension",
    "extension-map",
];
const UNNAMED: &[&str] = &[
    "instance",
    "alpha",
    "bracket",
    "group",
    "representation",
    "fiber",
];

fn tokenize(text: &str, base_col: usize) -> Vec<Token> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, ch) in text.chars().enumerate() {
        if ch.is_whitespace() {
            if !current.is_empty() {
                out.push(Token {
                    text: std::mem::take(&mut current),
                    col: base_col + start,
                });
            }
        } else {
            if current.is_empty() {
                start = i;
            }
            current.push(ch);
        }
    }
    if !current.is_empty() {
        out.push(Token {
            text: current,
            col: base_col + start,
        });
    }
    out
}

/// Parses `c₁ e_i + c₂ e_j − …` (or `0`) into a dense vector of length `dim`.
pub(crate) fn parse_vector(text: &str, line: usize, col: usize, dim: usize) -> CliResult<Vector> {
    let toks = tokenize(text, col);
    let mut out = vec![Scalar::from_integer(0.into()); dim];
    if toks.len() == 1 && toks[0].text == "0" {
        return Ok(out);
    }
    if toks.is_empty() {
        return Err(CliError::syntax(line, col, "expected a vector such as `e_1` or `0`"));
    }
    let mut sign = 1i64;
    let mut coef: Option<Scalar> = None;
    let mut expect_term = true;
    for tok in &toks {
        let bad = |msg: String| CliError::syntax(line, tok.col, msg);
        let t = tok.text.as_str();
        let (t_sign, body) = match t.strip_prefix('-').or_else(|| t.strip_prefix('+')) {
            Some(rest) if rest.starts_with("e_") => (if t.starts_with('-') { -1 } else { 1 }, rest),
            _ => (1, t),
        };
        if t == "+" || t == "-" {
            if coef.is_some() {
                return Err(bad("expected a basis vector after the coefficient".into()));
            }
            if t == "-" {
                sign = -sign;
            }
            expect_term = true;
        } else if t == "*" {
            if coef.is_none() {
                return Err(bad("`*` needs a coefficient before it".into()));
            }
        } else if let Some(label) = body.strip_prefix("e_") {
            if !expect_term {
                return Err(bad("expected `+` or `-` between terms".into()));
            }
            let idx = match label.parse::<usize>() {
                Ok(i) if (1..=dim).contains(&i) => i - 1,
                _ => return Err(bad(format!("basis label `{t}` out of range e_1..e_{dim}"))),
            };
            let c = coef.take().unwrap_or_else(|| Scalar::from_integer(1.into()));
            out[idx] += c * Scalar::from_integer((sign * t_sign).into());
            sign = 1;
            expect_term = false;
        } else {
            if coef.is_some() || !expect_term {
                return Err(bad(format!("unexpected `{t}`")));
            }
            coef = Some(parse_scalar(t).ok_or_else(|| bad(format!("malformed rational `{t}`")))?);
        }
    }
    if coef.is_some() || expect_term {
        let last = toks.last().expect("nonempty");
        return Err(CliError::syntax(line, last.col, "vector ends without a basis vector"));
    }
    Ok(out)
}

fn split_sections(text: &str) -> CliResult<Vec<RawSection>> {
    let mut sections: Vec<RawSection> = Vec::new();
    let mut seen_titles: HashMap<String, usize> = HashMap::new();
    let mut seen_keys: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.chars().take_while(|c| c.is_whitespace()).count();
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(inner) = rest.strip_suffix(']') else {
                return Err(CliError::syntax(line, indent + 1, "section header must end with `]`"));
            };
            let toks = tokenize(inner, indent + 2);
            let (kind, name) = match toks.as_slice() {
                [k] if UNNAMED.contains(&k.text.as_str()) => (k.text.clone(), None),
                [k, n] if NAMED.contains(&k.text.as_str()) => (k.text.clone(), Some(n.text.clone())),
                [k] if NAMED.contains(&k.text.as_str()) => {
                    return Err(CliError::syntax(line, k.col, format!("[{}] needs a name", k.text)))
                }
                [k, ..] if UNNAMED.contains(&k.text.as_str()) => {
                    return Err(CliError::syntax(line, k.col, format!("[{}] takes no name", k.text)))
                }
                [k, ..] => {
                    return Err(CliError::syntax(line, k.col, format!("unknown section `{}`", k.text)))
                }
                [] => return Err(CliError::syntax(line, indent + 1, "empty section header")),
            };
            let section = RawSection {
                kind,
                name,
                entries: Vec::new(),
            };
            let title = section.title();
            if let Some(first) = seen_titles.insert(title.clone(), line) {
                return Err(CliError::syntax(
                    line,
                    indent + 1,
                    format!("duplicate section [{title}] (first at line {first})"),
                ));
            }
            seen_keys.clear();
            sections.push(section);
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(CliError::syntax(line, indent + 1, "expected `key = value`"));
        };
        let (lhs, rhs) = (&content[..eq], &content[eq + 1..]);
        let key = tokenize(lhs, 1);
        if key.is_empty() {
            return Err(CliError::syntax(line, indent + 1, "missing key before `=`"));
        }
        let lhs_chars = lhs.chars().count() + 1;
        let rhs_indent = rhs.chars().take_while(|c| c.is_whitespace()).count();
        let entry = Entry {
            line,
            value: rhs.trim().to_string(),
            value_col: lhs_chars + rhs_indent + 1,
            key,
        };
        let Some(section) = sections.last_mut() else {
            return Err(entry.err("entry outside of any section"));
        };
        let norm: Vec<&str> = entry.key.iter().map(|t| t.text.as_str()).collect();
        let norm = norm.join(" ");
        if let Some(first) = seen_keys.insert(norm.clone(), line) {
            return Err(entry.err(format!(
                "duplicate assignment to `{norm}` (first at line {first})"
            )));
        }
        section.entries.push(entry);
    }
    Ok(sections)
}

/// Collects `… row i = …` entries into a matrix; unlisted rows are zero.
struct MatrixRows {
    m: Matrix,
    any: bool,
}

impl MatrixRows {
    fn new(rows: usize, cols: usize) -> Self {
        Self {
            m: Matrix::zeros(rows, cols),
            any: false,
        }
    }

    fn set(&mut self, e: &Entry, row_pos: usize) -> CliResult<()> {
        e.literal(row_pos, "row")?;
        let r = e.index(row_pos + 1, self.m.rows())?;
        let values = e.row(self.m.cols())?;
        for (c, v) in values.into_iter().enumerate() {
            self.m.set(r, c, v);
        }
        self.any = true;
        Ok(())
    }

    fn or_identity(self) -> Matrix {
        if self.any {
            self.m
        } else {
            Matrix::identity(self.m.rows())
        }
    }
}

/// `action g row i = …` entries for every group element.
struct ActionRows {
    rows: Vec<MatrixRows>,
}

impl ActionRows {
    fn new(group: Option<&FiniteGroup>, dim: usize) -> Self {
        let order = group.map_or(0, FiniteGroup::order);
        Self {
            rows: (0..order).map(|_| MatrixRows::new(dim, dim)).collect(),
        }
    }

    fn set(&mut self, e: &Entry, group: Option<&FiniteGroup>) -> CliResult<()> {
        let Some(g) = group else {
            return Err(e.err("`action` given but the instance has no [group]"));
        };
        if e.key.len() != 4 {
            return Err(e.err("expected `action <element> row <i>`"));
        }
        let label = &e.key[1];
        let gi = g.index_of(&label.text).ok_or_else(|| {
            CliError::syntax(e.line, label.col, format!("unknown group element `{}`", label.text))
        })?;
        self.rows[gi].set(e, 2)
    }

    /// The action, with the identity defaulting to `I`; other elements must
    /// be listed. `None` when there is no group.
    fn finish(self, group: Option<&FiniteGroup>, section: &str) -> CliResult<Option<GroupAction>> {
        let Some(g) = group else {
            return Ok(None);
        };
        let mut mats = Vec::with_capacity(g.order());
        for (gi, rows) in self.rows.into_iter().enumerate() {
            if !rows.any && gi != g.identity() {
                return Err(CliError::semantic(
                    section,
                    format!("missing action rows for group element `{}`", g.label(gi)),
                ));
            }
            mats.push(rows.or_identity());
        }
        Ok(Some(GroupAction::new(g.clone(), mats)?))
    }
}

fn raw_len(n: usize, degree: usize, m: usize, cap: usize) -> CliResult<usize> {
    match checked_pow(n, degree).and_then(|x| x.checked_mul(m)) {
        Some(e) if e <= cap => Ok(e),
        _ => Err(CliError::Core(CoreError::SizeCap {
            degree,
            dim_t: n,
            dim_v: m,
            entries: (n as u128).saturating_pow(degree as u32).saturating_mul(m as u128),
            cap,
        })),
    }
}

fn flat(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

/// Parses and structurally validates an instance. Tensors whose raw size
/// exceeds `max_tensor_entries` are rejected with a size-cap error.
pub fn parse_instance(text: &str, max_tensor_entries: usize) -> CliResult<Instance> {
    let sections = split_sections(text)?;
    let get = |kind: &str| sections.iter().find(|s| s.kind == kind);
    let named = |kind: &'static str| sections.iter().filter(move |s| s.kind == kind);

    let head = get("instance").ok_or_else(|| CliError::semantic("instance", "missing [instance] section"))?;
    head.reject_unknown(&["name", "description", "convention", "field", "dim"])?;
    for e in &head.entries {
        e.arity(1)?;
    }
    if let Some(f) = head.find("field") {
        if f.value != "rational" {
            return Err(f.value_err(format!("unsupported field `{}` (only `rational`)", f.value)));
        }
    }
    let dim_entry = head
        .find("dim")
        .ok_or_else(|| CliError::semantic("instance", "missing `dim`"))?;
    let n = dim_entry.count()?;
    if n == 0 {
        return Err(dim_entry.value_err("dim must be at least 1"));
    }
    raw_len(n, 4, 1, max_tensor_entries)?;
    let text_of = |k: &str| head.find(k).map(|e| e.value.clone());

    let alpha = match get("alpha") {
        Some(s) => {
            s.reject_unknown(&["row"])?;
            let mut rows = MatrixRows::new(n, n);
            for e in &s.entries {
                e.arity(2)?;
                rows.set(e, 0)?;
            }
            rows.m
        }
        None => Matrix::identity(n),
    };

    let mut brackets = Vec::new();
    if let Some(s) = get("bracket") {
        s.reject_unknown(&["bracket"])?;
        for e in &s.entries {
            e.arity(4)?;
            let idx = [e.index(1, n)?, e.index(2, n)?, e.index(3, n)?];
            brackets.push((idx, e.vector(n)?));
        }
    }
    let lts = HomLts::from_brackets(alpha, &brackets)?;

    let group = match get("group") {
        Some(s) => Some(parse_group(s)?),
        None => None,
    };
    let action = match get("group") {
        Some(s) => {
            let mut rows = ActionRows::new(group.as_ref(), n);
            for e in s.entries.iter().filter(|e| e.head() == "action") {
                rows.set(e, group.as_ref())?;
            }
            rows.finish(group.as_ref(), "group")?
        }
        None => None,
    };

    let representation = match get("representation") {
        Some(s) => Some(parse_representation(s, n, group.as_ref(), max_tensor_entries)?),
        None => None,
    };

    let fiber = match get("fiber") {
        Some(s) => {
            s.reject_unknown(&["dim", "twist", "action"])?;
            let m = s
                .find("dim")
                .ok_or_else(|| CliError::semantic("fiber", "missing `dim`"))?
                .count()?;
            let mut twist = MatrixRows::new(m, m);
            let mut act = ActionRows::new(group.as_ref(), m);
            for e in &s.entries {
                match e.head() {
                    "twist" => {
                        e.arity(3)?;
                        twist.set(e, 1)?
                    }
                    "action" => act.set(e, group.as_ref())?,
                    _ => e.arity(1)?,
                }
            }
            Some(Fiber::new(twist.or_identity(), act.finish(group.as_ref(), "fiber")?)?)
        }
        None => None,
    };

    let mut inst = Instance {
        name: text_of("name"),
        description: text_of("description"),
        convention: text_of("convention"),
        lts,
        action,
        representation,
        fiber,
        cochains: Vec::new(),
        deformations: Vec::new(),
        isomorphisms: Vec::new(),
        extensions: Vec::new(),
        extension_maps: Vec::new(),
        fingerprint: hex::encode(Sha256::digest(text.as_bytes())),
    };

    for s in named("cochain") {
        let c = parse_cochain(s, &inst, max_tensor_entries)?;
        inst.cochains.push(c);
    }
    for s in named("deformation") {
        let d = parse_deformation(s, &inst)?;
        inst.deformations.push(d);
    }
    for s in named("isomorphism") {
        let iso = parse_isomorphism(s, &inst)?;
        inst.isomorphisms.push(iso);
    }
    for s in named("extension") {
        let e = parse_extension(s, &inst, max_tensor_entries)?;
        inst.extensions.push(e);
    }
    for s in named("extension-map") {
        let m = parse_extension_map(s, &inst)?;
        inst.extension_maps.push(m);
    }
    Ok(inst)
}

fn parse_group(s: &RawSection) -> CliResult<FiniteGroup> {
    s.reject_unknown(&["elements", "identity", "product", "action"])?;
    let elements = s
        .find("elements")
        .ok_or_else(|| CliError::semantic("group", "missing `elements`"))?;
    let labels: Vec<String> = tokenize(&elements.value, elements.value_col)
        .into_iter()
        .map(|t| t.text)
        .collect();
    if labels.is_empty() {
        return Err(elements.value_err("a group needs at least one element"));
    }
    let mut lookup = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if lookup.insert(l.clone(), i).is_some() {
            return Err(elements.value_err(format!("repeated group element `{l}`")));
        }
    }
    let label_at = |e: &Entry, tok: &Token| -> CliResult<usize> {
        lookup.get(&tok.text).copied().ok_or_else(|| {
            CliError::syntax(e.line, tok.col, format!("unknown group element `{}`", tok.text))
        })
    };
    let identity = match s.find("identity") {
        Some(e) => {
            let tok = Token {
                text: e.value.clone(),
                col: e.value_col,
            };
            label_at(e, &tok)?
        }
        None => 0,
    };
    let order = labels.len();
    let mut table = vec![vec![None; order]; order];
    for e in s.entries.iter().filter(|e| e.head() == "product") {
        e.arity(3)?;
        let a = label_at(e, &e.key[1])?;
        let b = label_at(e, &e.key[2])?;
        let tok = Token {
            text: e.value.clone(),
            col: e.value_col,
        };
        table[a][b] = Some(label_at(e, &tok)?);
    }
    for e in &s.entries {
        if matches!(e.head(), "elements" | "identity") {
            e.arity(1)?;
        }
    }
    let mut cayley = Vec::with_capacity(order);
    for (a, row) in table.into_iter().enumerate() {
        let mut out = Vec::with_capacity(order);
        for (b, v) in row.into_iter().enumerate() {
            out.push(v.ok_or_else(|| {
                CliError::semantic(
                    "group",
                    format!("missing `product {} {}`", labels[a], labels[b]),
                )
            })?);
        }
        cayley.push(out);
    }
    Ok(FiniteGroup::new(labels, cayley, identity)?)
}

fn parse_representation(
    s: &RawSection,
    n: usize,
    group: Option<&FiniteGroup>,
    cap: usize,
) -> CliResult<RepSpec> {
    s.reject_unknown(&["adjoint", "dim", "twist", "theta", "action"])?;
    if let Some(e) = s.find("adjoint") {
        if e.value != "true" {
            return Err(e.value_err("`adjoint` only accepts `true`"));
        }
        if let Some(other) = s.entries.iter().find(|x| x.head() != "adjoint") {
            return Err(other.err("an adjoint representation takes no other keys"));
        }
        return Ok(RepSpec::Adjoint);
    }
    let m = s
        .find("dim")
        .ok_or_else(|| CliError::semantic("representation", "missing `dim` (or `adjoint = true`)"))?
        .count()?;
    raw_len(n * n, 1, m * m, cap)?;
    let mut twist = MatrixRows::new(m, m);
    let mut theta = vec![Scalar::from_integer(0.into()); n * n * m * m];
    let mut act = ActionRows::new(group, m);
    for e in &s.entries {
        match e.head() {
            "twist" => {
                e.arity(3)?;
                twist.set(e, 1)?
            }
            "theta" => {
                e.arity(5)?;
                let (i, j) = (e.index(1, n)?, e.index(2, n)?);
                e.literal(3, "row")?;
                let p = e.index(4, m)?;
                for (q, v) in e.row(m)?.into_iter().enumerate() {
                    theta[(i * n + j) * m * m + p * m + q] = v;
                }
            }
            "action" => act.set(e, group)?,
            _ => e.arity(1)?,
        }
    }
    let rep = Representation::new(n, theta, twist.or_identity())?;
    Ok(RepSpec::Explicit {
        rep,
        action: act.finish(group, "representation")?,
    })
}

fn parse_cochain(s: &RawSection, inst: &Instance, cap: usize) -> CliResult<NamedCochain> {
    let title = s.title();
    s.reject_unknown(&["space", "degree", "value"])?;
    let space = match s.find("space") {
        Some(e) => match e.value.as_str() {
            "adjoint" => Space::Adjoint,
            "representation" => Space::Representation,
            "fiber" => Space::Fiber,
            other => {
                return Err(e.value_err(format!(
                    "unknown space `{other}` (adjoint, representation or fiber)"
                )))
            }
        },
        None => inst.default_space(),
    };
    let m = inst.space_dim(space).ok_or_else(|| {
        CliError::semantic(&title, format!("space `{}` is not declared", space.keyword()))
    })?;
    let degree_entry = s
        .find("degree")
        .ok_or_else(|| CliError::semantic(&title, "missing `degree`"))?;
    let degree = degree_entry.count()?;
    if degree % 2 == 0 {
        return Err(degree_entry.value_err("cochain degree must be odd"));
    }
    let n = inst.dim();
    let len = raw_len(n, degree, m, cap)?;
    let mut coeffs = vec![Scalar::from_integer(0.into()); len];
    for e in &s.entries {
        if e.head() != "value" {
            e.arity(1)?;
            continue;
        }
        e.arity(degree + 1)?;
        let idx: Vec<usize> = (1..=degree).map(|p| e.index(p, n)).collect::<CliResult<_>>()?;
        let base = flat(&idx, n) * m;
        for (p, v) in e.vector(m)?.into_iter().enumerate() {
            coeffs[base + p] = v;
        }
    }
    Ok(NamedCochain {
        name: s.name.clone().expect("named section"),
        space,
        cochain: Cochain::new(degree, n, m, coeffs)?,
    })
}

fn parse_deformation(s: &RawSection, inst: &Instance) -> CliResult<NamedDeformation> {
    let title = s.title();
    s.reject_unknown(&["order", "term"])?;
    let n = inst.dim();
    let declared = s.find("order").map(Entry::count).transpose()?;
    let mut terms: BTreeMap<usize, Vector> = BTreeMap::new();
    for e in s.entries.iter().filter(|e| e.head() == "term") {
        e.arity(5)?;
        let r = e.key[1].text.parse::<usize>().ok().filter(|&r| r >= 1).ok_or_else(|| {
            CliError::syntax(e.line, e.key[1].col, format!("expected an order ≥ 1, found `{}`", e.key[1].text))
        })?;
        if let Some(order) = declared {
            if r > order {
                return Err(CliError::syntax(e.line, e.key[1].col, format!("term order {r} exceeds declared order {order}")));
            }
        }
        let idx = [e.index(2, n)?, e.index(3, n)?, e.index(4, n)?];
        let term = terms.entry(r).or_insert_with(|| vec![Scalar::from_integer(0.into()); n.pow(4)]);
        let base = flat(&idx, n) * n;
        for (p, v) in e.vector(n)?.into_iter().enumerate() {
            term[base + p] = v;
        }
    }
    for e in &s.entries {
        if e.head() == "order" {
            e.arity(1)?;
        }
    }
    let order = declared.unwrap_or_else(|| terms.keys().last().copied().unwrap_or(0));
    let zero = vec![Scalar::from_integer(0.into()); n.pow(4)];
    let list = (1..=order)
        .map(|r| terms.remove(&r).unwrap_or_else(|| zero.clone()))
        .collect();
    let deformation = Deformation::new(inst.lts.clone(), inst.action.clone(), list)
        .map_err(|e| CliError::semantic(&title, e.to_string()))?;
    Ok(NamedDeformation {
        name: s.name.clone().expect("named section"),
        deformation,
    })
}

fn reference(s: &RawSection, key: &str, exists: impl Fn(&str) -> bool, what: &str) -> CliResult<String> {
    let e = s
        .find(key)
        .ok_or_else(|| CliError::semantic(s.title(), format!("missing `{key}`")))?;
    if !exists(&e.value) {
        return Err(e.value_err(format!("unknown {what} `{}`", e.value)));
    }
    Ok(e.value.clone())
}

fn parse_isomorphism(s: &RawSection, inst: &Instance) -> CliResult<NamedIsomorphism> {
    s.reject_unknown(&["from", "to", "order", "map"])?;
    let exists = |name: &str| inst.deformation(name).is_some();
    let from = reference(s, "from", exists, "deformation")?;
    let to = reference(s, "to", exists, "deformation")?;
    let n = inst.dim();
    let declared = s.find("order").map(Entry::count).transpose()?;
    let mut maps: BTreeMap<usize, MatrixRows> = BTreeMap::new();
    for e in &s.entries {
        if e.head() != "map" {
            e.arity(1)?;
            continue;
        }
        e.arity(4)?;
        let r = e.key[1].text.parse::<usize>().ok().filter(|&r| r >= 1).ok_or_else(|| {
            CliError::syntax(e.line, e.key[1].col, format!("expected an order ≥ 1, found `{}`", e.key[1].text))
        })?;
        if declared.is_some_and(|o| r > o) {
            return Err(CliError::syntax(e.line, e.key[1].col, "map order exceeds declared order"));
        }
        maps.entry(r).or_insert_with(|| MatrixRows::new(n, n)).set(e, 2)?;
    }
    let order = declared.unwrap_or_else(|| maps.keys().last().copied().unwrap_or(0));
    let list = (1..=order)
        .map(|r| maps.remove(&r).map_or_else(|| Matrix::zeros(n, n), |m| m.m))
        .collect();
    Ok(NamedIsomorphism {
        name: s.name.clone().expect("named section"),
        from,
        to,
        iso: FormalIsomorphism::new(n, list)?,
    })
}

fn parse_extension(s: &RawSection, inst: &Instance, cap: usize) -> CliResult<NamedExtension> {
    let title = s.title();
    s.reject_unknown(&["dim", "bracket", "twist", "incl", "proj", "section", "action"])?;
    let fiber = inst
        .fiber
        .clone()
        .ok_or_else(|| CliError::semantic(&title, "extensions need a [fiber] section"))?;
    let (n, m) = (inst.dim(), fiber.dim());
    let tn = s
        .find("dim")
        .ok_or_else(|| CliError::semantic(&title, "missing `dim`"))?
        .count()?;
    raw_len(tn, 4, 1, cap)?;
    let group = inst.group();
    let mut twist = MatrixRows::new(tn, tn);
    let mut incl = MatrixRows::new(tn, m);
    let mut proj = MatrixRows::new(n, tn);
    let mut section = MatrixRows::new(tn, n);
    let mut act = ActionRows::new(group, tn);
    let mut brackets = Vec::new();
    for e in &s.entries {
        match e.head() {
            "bracket" => {
                e.arity(4)?;
                let idx = [e.index(1, tn)?, e.index(2, tn)?, e.index(3, tn)?];
                brackets.push((idx, e.vector(tn)?));
            }
            "twist" | "incl" | "proj" | "section" => {
                e.arity(3)?;
                let target = match e.head() {
                    "twist" => &mut twist,
                    "incl" => &mut incl,
                    "proj" => &mut proj,
                    _ => &mut section,
                };
                target.set(e, 1)?;
            }
            "action" => act.set(e, group)?,
            _ => e.arity(1)?,
        }
    }
    let total = HomLts::from_brackets(twist.m, &brackets)?;
    let extension = CentralExtension::new(
        inst.lts.clone(),
        inst.action.clone(),
        fiber,
        total,
        incl.m,
        proj.m,
        section.m,
        act.finish(group, &title)?,
    )
    .map_err(|e| CliError::semantic(&title, e.to_string()))?;
    Ok(NamedExtension {
        name: s.name.clone().expect("named section"),
        extension,
    })
}

fn parse_extension_map(s: &RawSection, inst: &Instance) -> CliResult<NamedExtensionMap> {
    s.reject_unknown(&["from", "to", "row"])?;
    let exists = |name: &str| inst.extension(name).is_some();
    let from = reference(s, "from", exists, "extension")?;
    let to = reference(s, "to", exists, "extension")?;
    let cols = inst.extension(&from).expect("checked").total().dim();
    let rows = inst.extension(&to).expect("checked").total().dim();
    let mut m = MatrixRows::new(rows, cols);
    for e in &s.entries {
        if e.head() == "row" {
            e.arity(2)?;
            m.set(e, 0)?;
        } else {
            e.arity(1)?;
        }
    }
    Ok(NamedExtensionMap {
        name: s.name.clone().expect("named section"),
        from,
        to,
        map: m.m,
    })
}
