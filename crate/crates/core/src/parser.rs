//! Text formats for rules (`.mknf`) and ontologies (`.onto`).
//!
//! Both formats are dot-terminated clauses with `%` line comments. Parsing
//! never stops at the first problem: a malformed clause yields a diagnostic
//! and the parser resumes after the next `.`.

use std::collections::BTreeSet;
use std::fmt;

use crate::model::{Atom, ClassExpression, Individual, KnowledgeBase, MknfRule, OntologyAxiom, Signature, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    /// 1-based source line.
    pub line: usize,
    pub message: String,
}

impl ParseDiagnostic {
    fn error(line: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic { severity: Severity::Error, line: line.max(1), message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "line {}: {sev}: {}", self.line, self.message)
    }
}

/// The two texts that make up one knowledge base.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceBundle {
    pub rules_text: String,
    pub ontology_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(i64),
    LParen,
    RParen,
    Comma,
    Dot,
    If,
    Other(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Other(c) => write!(f, "`{c}`"),
        }
    }
}

fn lex(text: &str) -> Vec<(Tok, usize)> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '%' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '(' | ')' | ',' | '.' => {
                chars.next();
                out.push((
                    match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ',' => Tok::Comma,
                        _ => Tok::Dot,
                    },
                    line,
                ));
            }
            ':' => {
                chars.next();
                if chars.peek() == Some(&'-') {
                    chars.next();
                    out.push((Tok::If, line));
                } else {
                    out.push((Tok::Other(':'), line));
                }
            }
            c if c.is_ascii_digit() || c == '-' => {
                let mut s = String::new();
                s.push(c);
                chars.next();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.push(chars.next().unwrap());
                }
                match s.parse() {
                    Ok(n) => out.push((Tok::Number(n), line)),
                    Err(_) => out.push((Tok::Other(c), line)),
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                    s.push(chars.next().unwrap());
                }
                out.push((Tok::Ident(s), line));
            }
            other => {
                chars.next();
                out.push((Tok::Other(other), line));
            }
        }
    }
    out
}

fn is_variable(name: &str) -> bool {
    name.starts_with(|c: char| c.is_uppercase() || c == '_')
}

struct Cursor {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    last_line: usize,
}

type PResult<T> = Result<T, ParseDiagnostic>;

impl Cursor {
    fn new(text: &str) -> Self {
        let toks = lex(text);
        let last_line = toks.last().map_or(1, |t| t.1);
        Cursor { toks, pos: 0, last_line }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn line(&self) -> usize {
        self.toks.get(self.pos).map_or(self.last_line, |t| t.1)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn next(&mut self) -> PResult<Tok> {
        match self.toks.get(self.pos) {
            Some((t, _)) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(ParseDiagnostic::error(self.last_line, "unexpected end of input; missing `.`?")),
        }
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        let line = self.line();
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            let hint = if want == Tok::RParen { " (unbalanced parentheses)" } else { "" };
            Err(ParseDiagnostic::error(line, format!("expected {want}, found {got}{hint}")))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        let line = self.line();
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => Err(ParseDiagnostic::error(line, format!("expected {what}, found {other}"))),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Skips past the next `.` so parsing can resume at the following clause.
    fn recover(&mut self) {
        while let Some(t) = self.peek() {
            let done = *t == Tok::Dot;
            self.pos += 1;
            if done {
                break;
            }
        }
    }

    fn lower_name(&mut self, what: &str) -> PResult<String> {
        let line = self.line();
        let name = self.ident(what)?;
        if is_variable(&name) {
            return Err(ParseDiagnostic::error(line, format!("{what} `{name}` must start with a lowercase letter")));
        }
        Ok(name)
    }

    fn term(&mut self) -> PResult<Term> {
        let line = self.line();
        match self.next()? {
            Tok::Ident(s) if is_variable(&s) => Ok(Term::Var(s)),
            Tok::Ident(s) => Ok(Term::Const(Individual::new(s))),
            Tok::Number(n) if n >= 0 => Ok(Term::Const(Individual::new(n.to_string()))),
            other => Err(ParseDiagnostic::error(line, format!("expected a term, found {other}"))),
        }
    }

    fn atom(&mut self) -> PResult<Atom> {
        let predicate = self.lower_name("predicate")?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.term()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok(Atom::new(predicate, args))
    }

    fn rule(&mut self) -> PResult<MknfRule> {
        let head = self.atom()?;
        let mut k_body = Vec::new();
        let mut not_body = Vec::new();
        if self.eat(&Tok::If) {
            loop {
                let negated = matches!(self.peek(), Some(Tok::Ident(s)) if s == "not")
                    && !matches!(self.toks.get(self.pos + 1), Some((Tok::LParen | Tok::Comma | Tok::Dot, _)));
                if negated {
                    self.pos += 1;
                    not_body.push(self.atom()?);
                } else {
                    k_body.push(self.atom()?);
                }
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::Dot)?;
        Ok(MknfRule::new(head, k_body, not_body))
    }

    fn individual(&mut self) -> PResult<Individual> {
        Ok(Individual::new(self.lower_name("individual")?))
    }

    fn class(&mut self) -> PResult<ClassExpression> {
        use ClassExpression as C;
        let line = self.line();
        let name = self.lower_name("class expression")?;
        let simple = match name.as_str() {
            "top" => Some(C::Top),
            "bot" => Some(C::Bottom),
            "neg" | "and" | "or" | "exists" | "forall" | "atleast" | "atmost" => None,
            _ => Some(C::Named(name.clone())),
        };
        if let Some(c) = simple {
            if self.peek() == Some(&Tok::LParen) {
                return Err(ParseDiagnostic::error(line, format!("unknown constructor `{name}`")));
            }
            return Ok(c);
        }
        self.expect(Tok::LParen)?;
        let c = match name.as_str() {
            "neg" => C::Neg(Box::new(self.class()?)),
            "and" | "or" => {
                let mut parts = vec![self.class()?];
                while self.eat(&Tok::Comma) {
                    parts.push(self.class()?);
                }
                if name == "and" {
                    C::And(parts)
                } else {
                    C::Or(parts)
                }
            }
            "exists" | "forall" => {
                let r = self.lower_name("role")?;
                self.expect(Tok::Comma)?;
                let f = Box::new(self.class()?);
                if name == "exists" {
                    C::Exists(r, f)
                } else {
                    C::Forall(r, f)
                }
            }
            _ => {
                let nline = self.line();
                let n = match self.next()? {
                    Tok::Number(n) if n >= 0 => u32::try_from(n)
                        .map_err(|_| ParseDiagnostic::error(nline, format!("cardinality {n} is too large")))?,
                    Tok::Number(n) => {
                        return Err(ParseDiagnostic::error(nline, format!("cardinality must be non-negative, found {n}")))
                    }
                    other => return Err(ParseDiagnostic::error(nline, format!("expected a cardinality, found {other}"))),
                };
                self.expect(Tok::Comma)?;
                let r = self.lower_name("role")?;
                self.expect(Tok::Comma)?;
                let f = Box::new(self.class()?);
                if name == "atleast" {
                    C::AtLeast(n, r, f)
                } else {
                    C::AtMost(n, r, f)
                }
            }
        };
        self.expect(Tok::RParen)?;
        Ok(c)
    }

    fn statement(&mut self, declared: &mut Signature, axioms: &mut Vec<OntologyAxiom>) -> PResult<()> {
        let line = self.line();
        let keyword = self.ident("statement keyword")?;
        match keyword.as_str() {
            "concept" => {
                declared.concepts.insert(self.lower_name("concept")?);
            }
            "role" => {
                declared.roles.insert(self.lower_name("role")?);
            }
            "axiom" => {
                let form = self.ident("axiom form")?;
                self.expect(Tok::LParen)?;
                let a = self.class()?;
                self.expect(Tok::Comma)?;
                let b = self.class()?;
                self.expect(Tok::RParen)?;
                axioms.push(match form.as_str() {
                    "subclass" => OntologyAxiom::Subclass(a, b),
                    "equiv" => OntologyAxiom::Equiv(a, b),
                    _ => return Err(ParseDiagnostic::error(line, format!("unknown axiom form `{form}`"))),
                });
            }
            "fact" => {
                let form = self.ident("fact form")?;
                self.expect(Tok::LParen)?;
                let ax = match form.as_str() {
                    "instance" => {
                        let i = self.individual()?;
                        self.expect(Tok::Comma)?;
                        OntologyAxiom::InstanceOf(i, self.class()?)
                    }
                    "role" => {
                        let r = self.lower_name("role")?;
                        self.expect(Tok::Comma)?;
                        let a = self.individual()?;
                        self.expect(Tok::Comma)?;
                        OntologyAxiom::RoleFact(r, a, self.individual()?)
                    }
                    "equal" | "different" => {
                        let a = self.individual()?;
                        self.expect(Tok::Comma)?;
                        let b = self.individual()?;
                        if form == "equal" {
                            OntologyAxiom::Equal(a, b)
                        } else {
                            OntologyAxiom::Different(a, b)
                        }
                    }
                    _ => return Err(ParseDiagnostic::error(line, format!("unknown fact form `{form}`"))),
                };
                self.expect(Tok::RParen)?;
                axioms.push(ax);
            }
            other => return Err(ParseDiagnostic::error(line, format!("unknown statement `{other}`"))),
        }
        self.expect(Tok::Dot)
    }
}

/// Result of [`parse_rules`]: the rules, the line each one starts on, and
/// any diagnostics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedRules {
    pub rules: Vec<MknfRule>,
    pub lines: Vec<usize>,
    pub diagnostics: Vec<ParseDiagnostic>,
}

pub fn parse_rules(text: &str) -> ParsedRules {
    let mut cur = Cursor::new(text);
    let mut out = ParsedRules::default();
    while !cur.at_end() {
        let line = cur.line();
        match cur.rule() {
            Ok(r) => {
                out.rules.push(r);
                out.lines.push(line);
            }
            Err(d) => {
                out.diagnostics.push(d);
                cur.recover();
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedOntology {
    pub axioms: Vec<OntologyAxiom>,
    /// Declared names plus every name used in the axioms.
    pub signature: Signature,
    pub diagnostics: Vec<ParseDiagnostic>,
}

pub fn parse_ontology(text: &str) -> ParsedOntology {
    let mut cur = Cursor::new(text);
    let mut declared = Signature::default();
    let mut axioms = Vec::new();
    let mut diagnostics = Vec::new();
    let mut conflicts = BTreeSet::new();
    while !cur.at_end() {
        let line = cur.line();
        if let Err(d) = cur.statement(&mut declared, &mut axioms) {
            diagnostics.push(d);
            cur.recover();
        }
        let sig = Signature::from_axioms(&declared, &axioms);
        for name in sig.concepts.intersection(&sig.roles) {
            if conflicts.insert(name.clone()) {
                diagnostics.push(ParseDiagnostic::error(line, format!("`{name}` is used both as a concept and as a role")));
            }
        }
    }
    let signature = Signature::from_axioms(&declared, &axioms);
    ParsedOntology { axioms, signature, diagnostics }
}

/// One error per rule variable that occurs in no positive non-DL body atom.
/// `lines[i]` is the source line of rule `i`; missing entries fall back to
/// the rule's position.
pub fn validate_dl_safety(kb: &KnowledgeBase, lines: &[usize]) -> Vec<ParseDiagnostic> {
    kb.dl_safety_violations()
        .into_iter()
        .map(|v| {
            let line = lines.get(v.rule_index).copied().unwrap_or(v.rule_index + 1);
            ParseDiagnostic::error(
                line,
                format!(
                    "rule `{}` is not DL-safe: variable {} occurs in no positive non-DL body atom",
                    kb.program[v.rule_index], v.variable
                ),
            )
        })
        .collect()
}

/// A knowledge base loaded from text, with everything reported along the way.
#[derive(Debug, Clone)]
pub struct Loaded {
    /// `None` when the texts had errors that prevent building a knowledge base.
    pub kb: Option<KnowledgeBase>,
    pub rule_lines: Vec<usize>,
    pub rule_diagnostics: Vec<ParseDiagnostic>,
    pub ontology_diagnostics: Vec<ParseDiagnostic>,
}

impl Loaded {
    pub fn has_errors(&self) -> bool {
        self.kb.is_none()
            || self.rule_diagnostics.iter().chain(&self.ontology_diagnostics).any(ParseDiagnostic::is_error)
    }
}

/// Parses both texts and builds the knowledge base. DL-safety is not checked
/// here; see [`validate_dl_safety`].
pub fn load(bundle: &SourceBundle) -> Loaded {
    let rules = parse_rules(&bundle.rules_text);
    let onto = parse_ontology(&bundle.ontology_text);
    let mut rule_diagnostics = rules.diagnostics;
    let ontology_diagnostics = onto.diagnostics;
    let kb = if rule_diagnostics.is_empty() && ontology_diagnostics.is_empty() {
        match KnowledgeBase::new(onto.axioms, onto.signature, rules.rules) {
            Ok(kb) => Some(kb),
            Err(e) => {
                rule_diagnostics.push(ParseDiagnostic::error(1, e.to_string()));
                None
            }
        }
    } else {
        None
    };
    Loaded { kb, rule_lines: rules.lines, rule_diagnostics, ontology_diagnostics }
}

/// Canonical text for `kb`: declarations first, then axioms, then rules.
pub fn print_kb(kb: &KnowledgeBase) -> SourceBundle {
    let mut rules_text = String::new();
    for r in &kb.program {
        rules_text.push_str(&r.to_string());
        rules_text.push('\n');
    }
    let mut ontology_text = String::new();
    for c in &kb.signature.concepts {
        ontology_text.push_str(&format!("concept {c}.\n"));
    }
    for r in &kb.signature.roles {
        ontology_text.push_str(&format!("role {r}.\n"));
    }
    for ax in &kb.ontology {
        ontology_text.push_str(&ax.to_string());
        ontology_text.push('\n');
    }
    SourceBundle { rules_text, ontology_text }
}

/// Parses a single atom such as `surcharge(X)` or `inspect(s1)`.
pub fn parse_atom(text: &str) -> PResult<Atom> {
    let mut cur = Cursor::new(text);
    let atom = cur.atom()?;
    cur.eat(&Tok::Dot);
    if !cur.at_end() {
        let line = cur.line();
        return Err(ParseDiagnostic::error(line, format!("unexpected {} after atom", cur.next()?)));
    }
    Ok(atom)
}

/// A literal for direct entailment checks: `p(a)`, `neg(p(a))`, or `equal(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Positive(Atom),
    Negative(Atom),
    Equality(Individual, Individual),
}

pub fn parse_literal(text: &str) -> PResult<Literal> {
    let trimmed = text.trim().trim_end_matches('.').trim();
    if let Some(inner) = trimmed.strip_prefix("neg(").and_then(|s| s.strip_suffix(')')) {
        return Ok(Literal::Negative(parse_atom(inner)?));
    }
    let atom = parse_atom(trimmed)?;
    if atom.predicate == "equal" && atom.args.len() == 2 {
        if let [Term::Const(a), Term::Const(b)] = atom.args.as_slice() {
            return Ok(Literal::Equality(a.clone(), b.clone()));
        }
    }
    Ok(Literal::Positive(atom))
}

/// Names used in the rules that are not in the ontology signature.
pub fn non_dl_predicates(kb: &KnowledgeBase) -> BTreeSet<String> {
    kb.program
        .iter()
        .flat_map(MknfRule::atoms)
        .filter(|a| !kb.is_dl(&a.predicate))
        .map(|a| a.predicate.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ClassExpression as C;

    #[test]
    fn rule_with_negation() {
        let p = parse_rules("inspect(X) :- hasShipment(X,C), not safeCountry(C).");
        assert!(p.diagnostics.is_empty(), "{:?}", p.diagnostics);
        assert_eq!(p.rules.len(), 1);
        assert_eq!(p.rules[0].k_body.len(), 1);
        assert_eq!(p.rules[0].not_body.len(), 1);
        assert_eq!(p.rules[0].not_body[0].predicate, "safeCountry");
    }

    #[test]
    fn facts_and_comments() {
        let p = parse_rules("% a fact\np(object).\n\nwin :- not lose.\n");
        assert!(p.diagnostics.is_empty());
        assert_eq!(p.rules[0], MknfRule::fact(Atom::new("p", vec![Term::constant("object")])));
        assert_eq!(p.lines, vec![2, 4]);
        assert_eq!(p.rules[1].head.arity(), 0);
    }

    #[test]
    fn empty_rules_text() {
        assert_eq!(parse_rules(""), ParsedRules::default());
    }

    #[test]
    fn errors_carry_lines_and_recover() {
        let p = parse_rules("p(a).\nq(a :- p(a).\nr(b).\nX(a).\n");
        assert_eq!(p.rules.len(), 2);
        assert_eq!(p.diagnostics.len(), 2);
        assert_eq!(p.diagnostics[0].line, 2);
        assert!(p.diagnostics[0].message.contains("unbalanced"));
        assert_eq!(p.diagnostics[1].line, 4);
        let p = parse_rules("p(a)");
        assert_eq!(p.diagnostics.len(), 1);
    }

    #[test]
    fn not_as_a_predicate_name() {
        let p = parse_rules("q :- not(a), not.");
        assert!(p.diagnostics.is_empty());
        assert_eq!(p.rules[0].k_body.len(), 2);
    }

    #[test]
    fn ontology_statements() {
        let o = parse_ontology(
            "concept country.\naxiom subclass(scandinavianCountry, safeCountry).\n\
             fact instance(bill, exists(spouse, top)).\naxiom equiv(nonMarried, neg(married)).\n\
             fact role(hasShipment, s1, norway). fact different(a, b).\n\
             axiom subclass(top, atmost(2, r, and(a1, or(a2, bot)))).",
        );
        assert!(o.diagnostics.is_empty(), "{:?}", o.diagnostics);
        assert_eq!(o.axioms[0], OntologyAxiom::Subclass(C::named("scandinavianCountry"), C::named("safeCountry")));
        assert_eq!(o.axioms[1], OntologyAxiom::InstanceOf("bill".into(), C::exists("spouse", C::Top)));
        assert_eq!(o.axioms[2], OntologyAxiom::Equiv(C::named("nonMarried"), C::neg(C::named("married"))));
        assert!(o.signature.concepts.contains("country"));
        assert!(o.signature.roles.contains("spouse"));
        assert!(o.signature.roles.contains("hasShipment"));
    }

    #[test]
    fn ontology_errors() {
        let o = parse_ontology("concept a.\naxiom subclass(a, atleast(-1, r, top)).\naxiom subclass(a, frob(b)).\nfact role(a, x, y).\n");
        assert_eq!(o.diagnostics.len(), 3, "{:?}", o.diagnostics);
        assert!(o.diagnostics[0].message.contains("non-negative"));
        assert!(o.diagnostics[1].message.contains("unknown constructor"));
        assert_eq!(o.diagnostics[2].line, 4);
    }

    #[test]
    fn dl_safety_diagnostics() {
        let rules = parse_rules("surcharge(X) :- highRisk(X).\nthird(X) :- p(X), second(X).\nfact1.");
        let onto = parse_ontology("concept highRisk. concept second.");
        let kb = KnowledgeBase::new(onto.axioms, onto.signature, rules.rules).unwrap();
        let d = validate_dl_safety(&kb, &rules.lines);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].line, 1);
        assert!(d[0].message.contains("variable X"));
    }

    #[test]
    fn round_trip() {
        let bundle = SourceBundle {
            rules_text: "c(X) :- p(X), a(X), not b(X).\np(object).\na(object).\n".into(),
            ontology_text: "axiom subclass(a, b).\nrole r.\nfact instance(x, atmost(1, r, neg(a))).\n".into(),
        };
        let kb = load(&bundle).kb.unwrap();
        let again = load(&print_kb(&kb)).kb.unwrap();
        assert_eq!(kb, again);
        assert_eq!(print_kb(&KnowledgeBase::empty()), SourceBundle::default());
    }

    #[test]
    fn literals() {
        assert!(matches!(parse_literal("neg(inspect(s2))").unwrap(), Literal::Negative(a) if a.predicate == "inspect"));
        assert!(matches!(parse_literal("married(bill)").unwrap(), Literal::Positive(_)));
        assert!(matches!(parse_literal("equal(a, b)").unwrap(), Literal::Equality(..)));
        assert!(parse_literal("p(a) q").is_err());
    }
}
