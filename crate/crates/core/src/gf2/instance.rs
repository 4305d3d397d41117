//! CSP instances and their line-based text format.
//!
//! ```text
//! # comment
//! vars 5
//! xor x1 x3 x4 = 0
//! rel (x1 x2 x3) { 001 100 011 110 }
//! ```

use std::fmt;
use std::str::FromStr;

use super::bits::BitRow;
use super::relation::{relation_to_affine, Relation};
use super::system::{Gf2Row, Gf2System};
use super::Gf2Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `x_{v1} ^ ... ^ x_{vk} = rhs`.
    Xor { vars: Vec<u32>, rhs: bool },
    /// Tuple table over a scope.
    Relation(Relation),
}

impl Constraint {
    pub fn is_satisfied_by(&self, is_set: impl Fn(u32) -> bool) -> bool {
        match self {
            Constraint::Xor { vars, rhs } => {
                vars.iter().filter(|&&v| is_set(v)).count() % 2 == usize::from(*rhs)
            }
            Constraint::Relation(r) => {
                let bits: Vec<bool> = r.scope().iter().map(|&v| is_set(v)).collect();
                r.contains(&BitRow::from_bools(&bits))
            }
        }
    }

    fn vars(&self) -> &[u32] {
        match self {
            Constraint::Xor { vars, .. } => vars,
            Constraint::Relation(r) => r.scope(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Instance {
    pub n: usize,
    pub constraints: Vec<Constraint>,
}

impl Instance {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            constraints: Vec::new(),
        }
    }

    pub fn with_xor(mut self, vars: &[u32], rhs: bool) -> Self {
        self.constraints.push(Constraint::Xor {
            vars: vars.to_vec(),
            rhs,
        });
        self
    }

    pub fn with_relation(mut self, relation: Relation) -> Self {
        self.constraints.push(Constraint::Relation(relation));
        self
    }

    pub fn is_satisfied_by(&self, is_set: impl Fn(u32) -> bool + Copy) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied_by(is_set))
    }
}

/// Concatenates every constraint's affine rows, widened to `n` columns.
pub fn assemble(instance: &Instance) -> Result<Gf2System, Gf2Error> {
    let n = instance.n;
    let mut system = Gf2System::new(n);
    for c in &instance.constraints {
        if let Some(&v) = c.vars().iter().find(|&&v| v == 0 || v as usize > n) {
            return Err(Gf2Error::ScopeOutOfRange { var: v, n });
        }
        match c {
            Constraint::Xor { vars, rhs } => system.push(Gf2Row::from_vars(n, vars, *rhs)),
            Constraint::Relation(r) => {
                for eq in relation_to_affine(r)? {
                    let vars: Vec<u32> = eq.coeffs.ones().map(|i| r.scope()[i]).collect();
                    system.push(Gf2Row::from_vars(n, &vars, eq.rhs));
                }
            }
        }
    }
    Ok(system)
}

fn parse_var(token: &str, line: usize) -> Result<u32, Gf2Error> {
    token
        .strip_prefix('x')
        .and_then(|d| d.parse::<u32>().ok())
        .filter(|&v| v > 0)
        .ok_or_else(|| Gf2Error::Parse {
            line,
            message: format!("expected variable like x3, found {token:?}"),
        })
}

fn parse_bit(token: &str, line: usize) -> Result<bool, Gf2Error> {
    match token {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(Gf2Error::Parse {
            line,
            message: format!("expected 0 or 1, found {token:?}"),
        }),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, Gf2Error> {
    let mut n: Option<usize> = None;
    let mut constraints = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Gf2Error::Parse { line, message };
        let (head, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        match head {
            "vars" => {
                if n.is_some() {
                    return Err(err("duplicate `vars` line".into()));
                }
                let count = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad variable count {:?}", rest.trim())))?;
                n = Some(count);
            }
            "xor" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| err("xor line needs `= 0` or `= 1`".into()))?;
                let vars = lhs
                    .split_whitespace()
                    .map(|t| parse_var(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                let rhs = parse_bit(rhs.trim(), line)?;
                constraints.push(Constraint::Xor { vars, rhs });
            }
            "rel" => {
                let open = rest.find('(').ok_or_else(|| err("missing `(`".into()))?;
                let close = rest.find(')').ok_or_else(|| err("missing `)`".into()))?;
                let lb = rest.find('{').ok_or_else(|| err("missing `{`".into()))?;
                let rb = rest.rfind('}').ok_or_else(|| err("missing `}`".into()))?;
                if !(open < close && close < lb && lb < rb) {
                    return Err(err("expected `rel (vars) { tuples }`".into()));
                }
                let scope = rest[open + 1..close]
                    .split_whitespace()
                    .map(|t| parse_var(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                let tuples = rest[lb + 1..rb]
                    .split_whitespace()
                    .map(|t| {
                        BitRow::from_bitstring(t)
                            .ok_or_else(|| err(format!("bad tuple {t:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let relation = Relation::new(scope, tuples).map_err(|e| err(e.to_string()))?;
                constraints.push(Constraint::Relation(relation));
            }
            other => return Err(err(format!("unknown directive {other:?}"))),
        }
    }
    let n = n.ok_or(Gf2Error::Parse {
        line: 0,
        message: "missing `vars <n>` line".into(),
    })?;
    Ok(Instance { n, constraints })
}

impl FromStr for Instance {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_instance(s)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.n)?;
        for c in &self.constraints {
            match c {
                Constraint::Xor { vars, rhs } => {
                    f.write_str("xor")?;
                    for v in vars {
                        write!(f, " x{v}")?;
                    }
                    writeln!(f, " = {}", u8::from(*rhs))?;
                }
                Constraint::Relation(r) => {
                    let scope: Vec<String> = r.scope().iter().map(|v| format!("x{v}")).collect();
                    let tuples: Vec<String> = r.tuples().iter().map(|t| t.to_string()).collect();
                    writeln!(f, "rel ({}) {{ {} }}", scope.join(" "), tuples.join(" "))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
# two parity constraints
vars 5
xor x1 x3 x4 = 0
xor x2 x3 x5 = 1   # trailing comment
";

    #[test]
    fn parses_and_assembles_xor_rows() {
        let inst = parse_instance(EXAMPLE).unwrap();
        assert_eq!(inst.n, 5);
        let s = assemble(&inst).unwrap();
        assert_eq!(s.rows.len(), 2);
        assert_eq!(s.rows[0], Gf2Row::from_vars(5, &[1, 3, 4], false));
        assert_eq!(s.rows[1], Gf2Row::from_vars(5, &[2, 3, 5], true));
        assert_eq!(inst.to_string().parse::<Instance>().unwrap(), inst);
    }

    #[test]
    fn relation_lines_widen_to_global_columns() {
        let inst = parse_instance("vars 3\nrel (x1 x3) { 11 01 }\n").unwrap();
        let s = assemble(&inst).unwrap();
        assert_eq!(s.rows, vec![Gf2Row::from_vars(3, &[3], true)]);

        let inst = parse_instance("vars 3\nrel (x1 x2 x3) { 001 100 011 110 }\nrel (x1 x3) {11 01}").unwrap();
        let s = assemble(&inst).unwrap();
        assert_eq!(s.rows, vec![Gf2Row::from_vars(3, &[1, 3], true), Gf2Row::from_vars(3, &[3], true)]);
        assert!(inst.is_satisfied_by(|v| v == 3));
        assert_eq!(inst.to_string().parse::<Instance>().unwrap(), inst);
    }

    #[test]
    fn empty_instance_and_errors() {
        let s = assemble(&Instance::new(4)).unwrap();
        assert!(s.rows.is_empty());
        assert_eq!(
            assemble(&Instance::new(2).with_xor(&[1, 3], false)),
            Err(Gf2Error::ScopeOutOfRange { var: 3, n: 2 })
        );
        for bad in [
            "xor x1 = 0",
            "vars 2\nxor x1 x2 = 2",
            "vars 2\nxor x1 x2",
            "vars 2\nfoo",
            "vars 2\nrel (x1 x2) { 0a }",
            "vars 2\nrel (x1 x1) { 00 }",
            "vars two",
        ] {
            assert!(matches!(parse_instance(bad), Err(Gf2Error::Parse { .. })), "{bad}");
        }
        let not_closed = parse_instance("vars 2\nrel (x1 x2) { 00 11 01 }").unwrap();
        assert_eq!(assemble(&not_closed), Err(Gf2Error::NotMinorityClosed));
    }
}
