//! Session files: one declaration or task per line, `#` starts a comment.
//!
//! ```text
//! char 32003
//! ring x, y
//! order degrevlex
//! ideal I = (x, y)
//! module M = R/(x)
//! task theorem6 i=1 M=M N=M I=I J=I n=1..8 m=1..8
//! ```

use std::collections::BTreeMap;
use std::fmt;

use torhilbert_core::{
    Error, FPModule, Ideal, MonomialOrder, OrderKind, Poly, PrimeField, Ring, DEFAULT_CHARACTERISTIC,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SessionError {}

fn error(line: usize, column: usize, message: impl Into<String>) -> SessionError {
    SessionError { line, column, message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Sample,
    Diagonal,
    Mixed,
    Fit,
    Theorem6,
    Corollary7,
    Corollary8,
    Theorem9,
    Prop10,
    Prop5,
    Remark,
    Tor,
    Stabilize,
}

impl TaskKind {
    pub const ALL: [TaskKind; 13] = [
        TaskKind::Sample,
        TaskKind::Diagonal,
        TaskKind::Mixed,
        TaskKind::Fit,
        TaskKind::Theorem6,
        TaskKind::Corollary7,
        TaskKind::Corollary8,
        TaskKind::Theorem9,
        TaskKind::Prop10,
        TaskKind::Prop5,
        TaskKind::Remark,
        TaskKind::Tor,
        TaskKind::Stabilize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Sample => "sample",
            TaskKind::Diagonal => "diagonal",
            TaskKind::Mixed => "mixed",
            TaskKind::Fit => "fit",
            TaskKind::Theorem6 => "theorem6",
            TaskKind::Corollary7 => "corollary7",
            TaskKind::Corollary8 => "corollary8",
            TaskKind::Theorem9 => "theorem9",
            TaskKind::Prop10 => "prop10",
            TaskKind::Prop5 => "prop5",
            TaskKind::Remark => "remark",
            TaskKind::Tor => "tor",
            TaskKind::Stabilize => "stabilize",
        }
    }

    fn from_name(s: &str) -> Option<TaskKind> {
        TaskKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Parameters the task requires, and the ones it accepts besides.
    fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        use TaskKind::*;
        match self {
            Sample | Mixed | Fit | Theorem6 | Corollary8 | Theorem9 | Prop10 => {
                (&["i", "M", "N", "I"], &["J", "n", "m", "max_degree"])
            }
            Diagonal | Corollary7 => (&["i", "M", "N", "I"], &["n", "max_degree"]),
            Prop5 => (&["i", "M", "N", "I"], &["budget"]),
            Stabilize => (&["i", "M", "N", "I"], &["budget", "window"]),
            Tor => (&["i", "M", "N"], &[]),
            Remark => (&[], &["n", "m", "max_degree"]),
        }
    }
}

/// A task with every name resolved.
#[derive(Clone, Debug)]
pub struct Task {
    pub line: usize,
    pub kind: TaskKind,
    pub i: usize,
    pub m: Option<Named<FPModule>>,
    pub n: Option<Named<FPModule>>,
    pub ii: Option<Named<Ideal>>,
    pub jj: Option<Named<Ideal>>,
    pub n_range: Option<(u32, u32)>,
    pub m_range: Option<(u32, u32)>,
    pub budget: Option<u32>,
    pub window: Option<u32>,
    pub max_degree: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

/// Values given on the command line; they win over the session file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub characteristic: Option<u32>,
    /// Variables (names or 0-based indices) from most to least significant.
    pub seed_order: Option<Vec<String>>,
    pub budget: Option<u32>,
    pub max_degree: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub ring: Ring,
    pub ideals: BTreeMap<String, Ideal>,
    pub modules: BTreeMap<String, FPModule>,
    pub tasks: Vec<Task>,
    pub out: Option<String>,
}

struct Header {
    characteristic: u32,
    vars: Option<Vec<String>>,
    order: OrderKind,
}

enum Definition {
    Ideal,
    Module,
}

struct Loader {
    ring: Option<Ring>,
    header: Header,
    overrides: Overrides,
    ideals: BTreeMap<String, Ideal>,
    modules: BTreeMap<String, FPModule>,
    tasks: Vec<Task>,
    out: Option<String>,
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `text` at ASCII whitespace, keeping 1-based columns.
fn words(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..k]));
            }
        } else if start.is_none() {
            start = Some(k);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

impl Session {
    pub fn parse(text: &str, overrides: &Overrides) -> Result<Session, SessionError> {
        let mut loader = Loader {
            ring: None,
            header: Header { characteristic: DEFAULT_CHARACTERISTIC, vars: None, order: OrderKind::DegRevLex },
            overrides: overrides.clone(),
            ideals: BTreeMap::new(),
            modules: BTreeMap::new(),
            tasks: Vec::new(),
            out: None,
        };
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("");
            let ws = words(content);
            let Some(&(col, keyword)) = ws.first() else { continue };
            let rest_col = col + keyword.len();
            let rest = &content[rest_col - 1..];
            match keyword {
                "char" | "ring" | "order" => loader.header_statement(line, col, keyword, rest, rest_col)?,
                "out" => {
                    let w = words(rest);
                    match w.as_slice() {
                        [(_, dir)] => loader.out = Some(dir.to_string()),
                        _ => return Err(error(line, rest_col, "expected `out DIRECTORY`")),
                    }
                }
                "ideal" => loader.definition(line, rest, rest_col, Definition::Ideal)?,
                "module" => loader.definition(line, rest, rest_col, Definition::Module)?,
                "task" => loader.task(line, rest, rest_col)?,
                other => return Err(error(line, col, format!("unknown statement `{other}`"))),
            }
        }
        let ring = match loader.ring.take() {
            Some(r) => r,
            None => {
                loader.header.vars.get_or_insert_with(Vec::new);
                loader.build_ring(text.lines().count().max(1))?
            }
        };
        Ok(Session { ring, ideals: loader.ideals, modules: loader.modules, tasks: loader.tasks, out: loader.out })
    }
}

impl Loader {
    fn header_statement(
        &mut self,
        line: usize,
        col: usize,
        keyword: &str,
        rest: &str,
        rest_col: usize,
    ) -> Result<(), SessionError> {
        if self.ring.is_some() {
            return Err(error(line, col, format!("`{keyword}` must come before any ideal, module or task")));
        }
        let ws = words(rest);
        match keyword {
            "char" => match ws.as_slice() {
                [(c, v)] => {
                    self.header.characteristic = v
                        .parse()
                        .map_err(|_| error(line, rest_col + c - 1, format!("invalid characteristic `{v}`")))?;
                }
                _ => return Err(error(line, rest_col, "expected `char P`")),
            },
            "ring" => {
                let mut vars = Vec::new();
                let mut offset = 0;
                for part in rest.split(',') {
                    let trimmed = part.trim();
                    let lead = part.len() - part.trim_start().len();
                    if !is_name(trimmed) || trimmed == "R" {
                        return Err(error(
                            line,
                            rest_col + offset + lead,
                            format!("invalid variable name `{trimmed}`"),
                        ));
                    }
                    vars.push(trimmed.to_string());
                    offset += part.len() + 1;
                }
                self.header.vars = Some(vars);
            }
            _ => {
                self.header.order = match ws.as_slice() {
                    [(_, "degrevlex")] => OrderKind::DegRevLex,
                    [(_, "deglex")] => OrderKind::DegLex,
                    [(_, "block"), (c, k)] => OrderKind::Block(
                        k.parse().map_err(|_| error(line, rest_col + c - 1, format!("invalid block size `{k}`")))?,
                    ),
                    _ => {
                        return Err(error(
                            line,
                            rest_col,
                            "expected `order degrevlex`, `order deglex` or `order block K`",
                        ))
                    }
                };
            }
        }
        Ok(())
    }

    fn build_ring(&mut self, line: usize) -> Result<Ring, SessionError> {
        let p = self.overrides.characteristic.unwrap_or(self.header.characteristic);
        let field = PrimeField::new(p).map_err(|e| error(line, 1, e.to_string()))?;
        let vars = self.header.vars.clone().ok_or_else(|| error(line, 1, "no `ring` statement before first use"))?;
        let mut order = MonomialOrder::new(self.header.order);
        if let Some(seed) = &self.overrides.seed_order {
            let mut perm = Vec::new();
            for s in seed {
                let idx =
                    vars.iter().position(|v| v == s).or_else(|| s.parse::<usize>().ok().filter(|&k| k < vars.len()));
                perm.push(idx.ok_or_else(|| error(line, 1, format!("--seed-order: unknown variable `{s}`")))?);
            }
            order = order.with_priority(perm).map_err(|e| error(line, 1, format!("--seed-order: {e}")))?;
        }
        Ring::new(field, vars, order).map_err(|e| error(line, 1, e.to_string()))
    }

    fn ring(&mut self, line: usize) -> Result<Ring, SessionError> {
        if self.ring.is_none() {
            self.ring = Some(self.build_ring(line)?);
        }
        Ok(self.ring.clone().expect("ring built"))
    }

    fn definition(&mut self, line: usize, rest: &str, rest_col: usize, kind: Definition) -> Result<(), SessionError> {
        let ring = self.ring(line)?;
        let Some(eq) = rest.find('=') else {
            return Err(error(line, rest_col, "expected `NAME = EXPRESSION`"));
        };
        let name = rest[..eq].trim();
        let name_col = rest_col + rest[..eq].len() - rest[..eq].trim_start().len();
        if !is_name(name) || name == "R" || name == "coker" {
            return Err(error(line, name_col, format!("invalid name `{name}`")));
        }
        if self.ideals.contains_key(name) || self.modules.contains_key(name) {
            return Err(error(line, name_col, format!("`{name}` is already defined")));
        }
        let expr = &rest[eq + 1..];
        let mut p = ExprParser { text: expr, pos: 0, col: rest_col + eq + 1, line, ring: &ring, loader: self };
        match kind {
            Definition::Ideal => {
                let ideal = p.ideal_expr()?;
                p.finish()?;
                self.ideals.insert(name.to_string(), ideal);
            }
            Definition::Module => {
                let module = p.module_expr()?;
                p.finish()?;
                self.modules.insert(name.to_string(), module);
            }
        }
        Ok(())
    }

    fn task(&mut self, line: usize, rest: &str, rest_col: usize) -> Result<(), SessionError> {
        let ws = words(rest);
        let Some(&(kcol, kname)) = ws.first() else {
            return Err(error(line, rest_col, "expected a task kind"));
        };
        let kind = TaskKind::from_name(kname).ok_or_else(|| {
            let known: Vec<&str> = TaskKind::ALL.iter().map(|k| k.name()).collect();
            error(line, rest_col + kcol - 1, format!("unknown task `{kname}` (expected one of {})", known.join(", ")))
        })?;
        let ring = self.ring(line)?;
        let (required, optional) = kind.keys();
        let mut params: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for &(c, w) in &ws[1..] {
            let col = rest_col + c - 1;
            let Some((key, value)) = w.split_once('=') else {
                return Err(error(line, col, format!("expected `key=value`, found `{w}`")));
            };
            if !required.contains(&key) && !optional.contains(&key) {
                return Err(error(line, col, format!("task `{kname}` does not take `{key}`")));
            }
            if params.insert(key, (col + key.len() + 1, value)).is_some() {
                return Err(error(line, col, format!("`{key}` given twice")));
            }
        }
        if let Some(missing) = required.iter().find(|k| !params.contains_key(*k)) {
            return Err(error(line, rest_col + kcol - 1, format!("task `{kname}` needs `{missing}=`")));
        }
        let uint = |key: &str| -> Result<Option<u32>, SessionError> {
            params
                .get(key)
                .map(|&(c, v)| {
                    v.parse::<u32>().map_err(|_| error(line, c, format!("`{key}` must be a non-negative integer")))
                })
                .transpose()
        };
        let range = |key: &str| -> Result<Option<(u32, u32)>, SessionError> {
            let Some(&(c, v)) = params.get(key) else { return Ok(None) };
            let bad = || error(line, c, format!("`{key}` must be `A..B` or `A` with A <= B"));
            let (a, b) = match v.split_once("..") {
                Some((a, b)) => (a.parse::<u32>().map_err(|_| bad())?, b.parse::<u32>().map_err(|_| bad())?),
                None => {
                    let a = v.parse::<u32>().map_err(|_| bad())?;
                    (a, a)
                }
            };
            if a > b {
                return Err(bad());
            }
            Ok(Some((a, b)))
        };
        let module = |key: &str| -> Result<Option<Named<FPModule>>, SessionError> {
            let Some(&(c, v)) = params.get(key) else { return Ok(None) };
            match self.modules.get(v) {
                Some(m) => Ok(Some(Named { name: v.to_string(), value: m.clone() })),
                None if self.ideals.contains_key(v) => {
                    Err(error(line, c, format!("`{v}` is an ideal, expected a module")))
                }
                None => Err(error(line, c, format!("undefined module `{v}`"))),
            }
        };
        let ideal = |key: &str| -> Result<Option<Named<Ideal>>, SessionError> {
            let Some(&(c, v)) = params.get(key) else { return Ok(None) };
            match self.ideals.get(v) {
                Some(i) => Ok(Some(Named { name: v.to_string(), value: i.clone() })),
                None if self.modules.contains_key(v) => {
                    Err(error(line, c, format!("`{v}` is a module, expected an ideal")))
                }
                None => Err(error(line, c, format!("undefined ideal `{v}`"))),
            }
        };
        if kind == TaskKind::Remark && ring.nvars() < 2 {
            return Err(error(line, rest_col, "task `remark` needs at least two variables"));
        }
        let m = module("M")?;
        let n = module("N")?;
        let ii = ideal("I")?;
        let jj = ideal("J")?.or_else(|| if kind.keys().1.contains(&"J") { ii.clone() } else { None });
        let task = Task {
            line,
            kind,
            i: uint("i")?.unwrap_or(0) as usize,
            m,
            n,
            ii,
            jj,
            n_range: range("n")?,
            m_range: range("m")?,
            budget: self.overrides.budget.or(uint("budget")?),
            window: uint("window")?,
            max_degree: self.overrides.max_degree.or(uint("max_degree")?),
        };
        self.tasks.push(task);
        Ok(())
    }
}

struct ExprParser<'a> {
    text: &'a str,
    pos: usize,
    /// Column of `text[0]`.
    col: usize,
    line: usize,
    ring: &'a Ring,
    loader: &'a Loader,
}

impl ExprParser<'_> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, SessionError> {
        Err(error(self.line, self.col + at, message))
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SessionError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if len == 0 || rest.starts_with(|c: char| c.is_ascii_digit()) {
            return None;
        }
        self.pos += len;
        Some((start, self.text[start..start + len].to_string()))
    }

    fn int(&mut self) -> Result<u32, SessionError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        match rest[..len].parse() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => self.err(self.pos, "expected a non-negative integer"),
        }
    }

    fn finish(&mut self) -> Result<(), SessionError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(self.pos, format!("unexpected `{c}`")),
        }
    }

    /// A polynomial running up to the next top-level `,`, `)` or `]`.
    fn poly(&mut self) -> Result<Poly, SessionError> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        let mut end = self.text.len();
        for (k, c) in self.text[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' | ']' | ',' if depth == 0 => {
                    end = start + k;
                    break;
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        let src = &self.text[start..end];
        if src.trim().is_empty() {
            return self.err(start, "expected a polynomial");
        }
        self.pos = end;
        match self.ring.parse_poly(src) {
            Ok(f) => Ok(f),
            Err(Error::Parse { column, message }) => self.err(start + column - 1, message),
            Err(e) => self.err(start, e.to_string()),
        }
    }

    fn ideal_expr(&mut self) -> Result<Ideal, SessionError> {
        let mut acc = self.ideal_term()?;
        while self.eat('+') {
            acc = acc.sum(&self.ideal_term()?);
        }
        Ok(acc)
    }

    fn ideal_term(&mut self) -> Result<Ideal, SessionError> {
        let mut acc = self.ideal_factor()?;
        while self.eat('*') {
            acc = acc.product(&self.ideal_factor()?);
        }
        Ok(acc)
    }

    fn ideal_factor(&mut self) -> Result<Ideal, SessionError> {
        let base = self.ideal_atom()?;
        if self.eat('^') {
            let n = self.int()?;
            return Ok(base.power(n));
        }
        Ok(base)
    }

    fn ideal_atom(&mut self) -> Result<Ideal, SessionError> {
        if self.peek() == Some('(') {
            let start = self.pos;
            self.pos += 1;
            let mut gens = vec![self.poly()?];
            while self.eat(',') {
                gens.push(self.poly()?);
            }
            self.expect(')')?;
            return match Ideal::new(self.ring, gens) {
                Ok(i) => Ok(i),
                Err(e) => self.err(start, e.to_string()),
            };
        }
        let at = self.pos;
        match self.ident() {
            Some((c, name)) => match self.loader.ideals.get(&name) {
                Some(i) => Ok(i.clone()),
                None if self.loader.modules.contains_key(&name) => {
                    self.err(c, format!("`{name}` is a module, expected an ideal"))
                }
                None => self.err(c, format!("undefined ideal `{name}`")),
            },
            None => self.err(at, "expected `(` or an ideal name"),
        }
    }

    fn module_expr(&mut self) -> Result<FPModule, SessionError> {
        let at = self.pos;
        let Some((c, word)) = self.ident() else {
            return self.err(at, "expected `R`, `R^k`, `R/IDEAL`, `coker [[...]]` or a module name");
        };
        match word.as_str() {
            "R" => {
                if self.eat('^') {
                    let k = self.int()?;
                    return Ok(FPModule::free(self.ring, k as usize));
                }
                if self.eat('/') {
                    return Ok(FPModule::cyclic(&self.ideal_expr()?));
                }
                Ok(FPModule::free(self.ring, 1))
            }
            "coker" => {
                let start = self.pos;
                self.expect('[')?;
                let mut rows = Vec::new();
                loop {
                    self.expect('[')?;
                    let mut row = vec![self.poly()?];
                    while self.eat(',') {
                        row.push(self.poly()?);
                    }
                    self.expect(']')?;
                    rows.push(row);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(']')?;
                match FPModule::from_matrix(self.ring, &rows) {
                    Ok(m) => Ok(m),
                    Err(e) => self.err(start, e.to_string()),
                }
            }
            name => match self.loader.modules.get(name) {
                Some(m) => Ok(m.clone()),
                None if self.loader.ideals.contains_key(name) => {
                    self.err(c, format!("`{name}` is an ideal, expected a module"))
                }
                None => self.err(c, format!("undefined module `{name}`")),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use torhilbert_core::Length;

    fn parse(text: &str) -> Result<Session, SessionError> {
        Session::parse(text, &Overrides::default())
    }

    #[test]
    fn definitions_and_tasks() {
        let s = parse(
            "# header\nchar 32003\nring x, y\nideal I = (x, y)\nideal J = I^2 + (x^3)\nmodule M = R/(x)\nmodule P = coker [[x, y]]\nmodule F = R^2\ntask sample i=0 M=M N=P I=I n=1..4 m=2\n",
        )
        .unwrap();
        assert_eq!(s.ideals["J"].to_string(), "(x^2, x*y, y^2)");
        assert_eq!(s.modules["P"].length(), Length::Finite(1));
        assert_eq!(s.modules["F"].ambient().rank(), 2);
        let t = &s.tasks[0];
        assert_eq!(t.kind, TaskKind::Sample);
        assert_eq!(t.n_range, Some((1, 4)));
        assert_eq!(t.m_range, Some((2, 2)));
        assert_eq!(t.jj.as_ref().unwrap().name, "I");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("ring x, y\ntask sample i=0 M=M N=M I=K\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("`M`"));
        let e = parse("ring x, y\nmodule M = R\ntask sample i=0 M=M N=M I=K\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 27));
        assert!(e.message.contains("undefined ideal `K`"));
        let e = parse("ring x, y\nideal I = (x + y^2)\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("homogeneous"));
        let e = parse("ring x, y\nideal I = (x, z)\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 15));
        let e = parse("ring x, y\nideal I = (x)\nchar 5\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse("ring x, y\nfrobnicate\n").is_err());
    }

    #[test]
    fn overrides_apply() {
        let o = Overrides {
            characteristic: Some(7),
            seed_order: Some(vec!["y".into(), "x".into()]),
            ..Overrides::default()
        };
        let s = Session::parse("char 32003\nring x, y\n", &o).unwrap();
        assert_eq!(s.ring.field().characteristic(), 7);
        assert_eq!(s.ring.order().priority(), Some(&[1usize, 0][..]));
    }

    #[test]
    fn empty_session() {
        let s = parse("ring x, y\n").unwrap();
        assert!(s.tasks.is_empty());
        assert!(parse("# nothing\n").unwrap().tasks.is_empty());
    }
}
