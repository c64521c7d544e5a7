//! The MeasureSpec grammar: nested `name(key=val,...)` strings.
//!
//! ```text
//! spec  := name "(" [arg ("," arg)*] ")"
//! arg   := key "=" value | spec
//! value := number | word | "\"" re "," im "\""
//! ```
//!
//! Recognised forms: `gaussian(m=,T=[,mode=constant|antiderivative])`,
//! `mu(l=)`, `dethankel(N=,l=)`, `product(a,b)`, `convolution(a,b)`,
//! `quotient(a,b)` and `scaled(a,c="re,im")`.

use confmeasure::hankel::DetMeasureSpec;
use confmeasure::measures::{Degree, GaussianSpec, MeasureSpec};
use num_complex::Complex64;

use crate::config::parse_complex;
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
enum Arg {
    Pair(String, String),
    Spec(Node),
}

#[derive(Clone, Debug, PartialEq)]
struct Node {
    name: String,
    args: Vec<Arg>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> CliError {
        CliError::usage(format!("spec {:?}: {msg} at offset {}", self.src, self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> CliResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> CliResult<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || "._+-".contains(c) {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected a name or value"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn value(&mut self) -> CliResult<String> {
        self.skip_ws();
        if self.peek() == Some('"') {
            self.pos += 1;
            let start = self.pos;
            let end = self.src[start..].find('"').ok_or_else(|| self.err("unterminated quote"))?;
            self.pos = start + end + 1;
            return Ok(self.src[start..start + end].to_string());
        }
        self.word()
    }

    fn node(&mut self) -> CliResult<Node> {
        let name = self.word()?;
        self.expect('(')?;
        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() == Some(')') {
            self.pos += 1;
            return Ok(Node { name, args });
        }
        loop {
            let save = self.pos;
            let head = self.word()?;
            self.skip_ws();
            match self.peek() {
                Some('=') => {
                    self.pos += 1;
                    args.push(Arg::Pair(head, self.value()?));
                }
                Some('(') => {
                    self.pos = save;
                    args.push(Arg::Spec(self.node()?));
                }
                _ => return Err(self.err("expected '=' or '('")),
            }
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(Node { name, args });
                }
                _ => return Err(self.err("expected ',' or ')'")),
            }
        }
    }
}

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

impl Node {
    fn pairs(&self, allowed: &[&str]) -> CliResult<Vec<(&str, &str)>> {
        let mut out: Vec<(&str, &str)> = Vec::new();
        for a in &self.args {
            match a {
                Arg::Pair(k, v) => {
                    if !allowed.contains(&k.as_str()) {
                        return Err(usage(format!("{}: unknown key {k:?}", self.name)));
                    }
                    if out.iter().any(|(seen, _)| seen == k) {
                        return Err(usage(format!("{}: key {k:?} given twice", self.name)));
                    }
                    out.push((k, v));
                }
                Arg::Spec(_) => return Err(usage(format!("{}: unexpected nested spec", self.name))),
            }
        }
        Ok(out)
    }

    fn real(&self, pairs: &[(&str, &str)], key: &str) -> CliResult<Option<f64>> {
        pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| {
                v.parse::<f64>()
                    .map_err(|_| usage(format!("{}: {key} must be a number, got {v:?}", self.name)))
            })
            .transpose()
    }

    fn required(&self, pairs: &[(&str, &str)], key: &str) -> CliResult<f64> {
        self.real(pairs, key)?
            .ok_or_else(|| usage(format!("{}: missing {key}=", self.name)))
    }

    fn children(&self, count: usize, allowed: &[&str]) -> CliResult<(Vec<&Node>, Vec<(&str, &str)>)> {
        let mut nodes = Vec::new();
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for a in &self.args {
            match a {
                Arg::Spec(n) => nodes.push(n),
                Arg::Pair(k, v) => {
                    if !allowed.contains(&k.as_str()) {
                        return Err(usage(format!("{}: unknown key {k:?}", self.name)));
                    }
                    pairs.push((k, v));
                }
            }
        }
        if nodes.len() != count {
            return Err(usage(format!("{} takes {count} measure argument(s), got {}", self.name, nodes.len())));
        }
        Ok((nodes, pairs))
    }

    fn build(&self) -> CliResult<MeasureSpec> {
        Ok(match self.name.as_str() {
            "gaussian" => {
                let p = self.pairs(&["m", "T", "mode"])?;
                let m = self.required(&p, "m")?;
                let t = self.required(&p, "T")?;
                let mode = p.iter().find(|(k, _)| *k == "mode").map(|(_, v)| *v);
                let degree = match (m, mode) {
                    (m, None) if m > 0.0 => Degree::Weight(m),
                    (m, None | Some("constant")) if m == 0.0 => Degree::Constant,
                    (m, Some("antiderivative")) if m == 0.0 => Degree::Antiderivative,
                    (m, Some(mode)) if m == 0.0 => return Err(usage(format!("gaussian: unknown mode {mode:?}"))),
                    (_, Some(_)) => return Err(usage("gaussian: mode= applies to m=0 only".into())),
                    (m, None) => return Err(usage(format!("gaussian: m must be >= 0, got {m}"))),
                };
                MeasureSpec::Gaussian(GaussianSpec::new(degree, t)?)
            }
            "mu" => {
                let p = self.pairs(&["l"])?;
                let l = self.required(&p, "l")?;
                if l <= -1.0 {
                    return Err(usage(format!("mu: l must exceed -1, got {l}")));
                }
                MeasureSpec::MixtureMu { l }
            }
            "dethankel" => {
                let p = self.pairs(&["N", "l"])?;
                let n = self.required(&p, "N")?;
                if n.fract() != 0.0 || n < 1.0 {
                    return Err(usage(format!("dethankel: N must be a positive integer, got {n}")));
                }
                let l = self.real(&p, "l")?.unwrap_or(0.0);
                MeasureSpec::DetHankel(DetMeasureSpec::new(n as usize, l)?)
            }
            "product" | "convolution" | "quotient" => {
                let (nodes, _) = self.children(2, &[])?;
                let (a, b) = (nodes[0].build()?, nodes[1].build()?);
                match self.name.as_str() {
                    "product" => MeasureSpec::product(a, b)?,
                    "convolution" => MeasureSpec::convolution(a, b)?,
                    _ => MeasureSpec::quotient(a, b),
                }
            }
            "scaled" => {
                let (nodes, pairs) = self.children(1, &["c"])?;
                let raw = pairs
                    .iter()
                    .find(|(k, _)| *k == "c")
                    .map(|(_, v)| *v)
                    .ok_or_else(|| usage("scaled: missing c=".into()))?;
                let c = parse_complex(raw).ok_or_else(|| usage(format!("scaled: bad complex {raw:?}")))?;
                MeasureSpec::scaled(nodes[0].build()?, c)?
            }
            other => return Err(usage(format!("unknown measure {other:?}"))),
        })
    }
}

/// Parses a MeasureSpec string.
pub fn parse_spec(src: &str) -> CliResult<MeasureSpec> {
    let mut p = Parser { src, pos: 0 };
    let node = p.node()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    node.build()
}

fn real(x: f64) -> String {
    format!("{x:?}")
}

fn complex(c: Complex64) -> String {
    format!("\"{:?},{:?}\"", c.re, c.im)
}

/// Canonical string form; `parse_spec(&format_spec(s)) == s`.
pub fn format_spec(spec: &MeasureSpec) -> String {
    match spec {
        MeasureSpec::Gaussian(g) => match g.degree {
            Degree::Weight(m) => format!("gaussian(m={},T={})", real(m), real(g.t)),
            Degree::Constant => format!("gaussian(m=0,T={},mode=constant)", real(g.t)),
            Degree::Antiderivative => format!("gaussian(m=0,T={},mode=antiderivative)", real(g.t)),
        },
        MeasureSpec::MixtureMu { l } => format!("mu(l={})", real(*l)),
        MeasureSpec::DetHankel(d) => format!("dethankel(N={},l={})", d.n, real(d.l)),
        MeasureSpec::Product(a, b) => format!("product({},{})", format_spec(a), format_spec(b)),
        MeasureSpec::Convolution(a, b) => format!("convolution({},{})", format_spec(a), format_spec(b)),
        MeasureSpec::Quotient(a, b) => format!("quotient({},{})", format_spec(a), format_spec(b)),
        MeasureSpec::Scaled(a, c) => format!("scaled({},c={})", format_spec(a), complex(*c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_quotient() {
        let s = parse_spec("quotient(gaussian(m=1,T=1), gaussian(m=0,T=1))").unwrap();
        assert_eq!(s.degree(), 1.0);
        assert_eq!(
            s,
            MeasureSpec::quotient(
                MeasureSpec::gaussian(1.0, 1.0).unwrap(),
                MeasureSpec::Gaussian(GaussianSpec::new(Degree::Constant, 1.0).unwrap())
            )
        );
    }

    #[test]
    fn scaled_with_quoted_complex() {
        let s = parse_spec("scaled(mu(l=0.5),c=\"0,2\")").unwrap();
        assert_eq!(s, MeasureSpec::scaled(MeasureSpec::MixtureMu { l: 0.5 }, Complex64::new(0.0, 2.0)).unwrap());
    }

    #[test]
    fn malformed() {
        for bad in [
            "gaussian(m=1)",
            "gaussian(m=1,T=1",
            "gaussian(m=1,T=1) x",
            "gauss(m=1,T=1)",
            "gaussian(m=1,T=1,q=2)",
            "gaussian(m=1,T=one)",
            "product(gaussian(m=1,T=1))",
            "dethankel(N=1.5)",
            "convolution(gaussian(m=1,T=1),gaussian(m=2,T=1))",
            "",
        ] {
            assert!(parse_spec(bad).is_err(), "{bad}");
        }
    }
}
