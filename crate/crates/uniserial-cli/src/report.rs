//! Report documents.  Every report carries a `schema_version` so archived
//! certificates stay interpretable, and every embedded matrix or element is
//! rendered in the same text form the input documents accept — re-parsing a
//! report and re-running the verification must reproduce the same flags.

use serde::{Deserialize, Serialize};
use uniserial::constructions::Certificate;
use uniserial::cyclicgen::{Mode, UniserialReport};
use uniserial::linalg::JCDecomposition;
use uniserial::primelt::{AlphaSweep, DegreeProfile};
use uniserial::{Field, FieldElement, Mat};

use crate::input::matrix_rows;

pub const SCHEMA_VERSION: u32 = 1;

// ---- analyze ----

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub command: String,
    pub field: String,
    pub mode: String,
    pub uniserial: bool,
    pub length: usize,
    /// dim(W_{i+1}) − dim(W_i) along the socle filtration.
    pub layer_dims: Vec<usize>,
    /// Dimensions 0 = dim W₀ < dim W₁ < … = dim V of the filtration.
    pub chain_dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion_basis: Option<Vec<Vec<String>>>,
    /// h_i with gens[i] = h_i(generator), as polynomial strings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expressions: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combination: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue_degree: Option<ResidueReport>,
    /// Basis of a proper invariant subspace of the offending layer, when
    /// the action is not uniserial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_layer: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ShapeReport {
    /// The irreducible p with min_poly(generator) = p^power.
    pub irreducible: String,
    pub power: u32,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ResidueReport {
    /// [A/rad(A) : F].
    pub dimension: usize,
    /// Number of distinct primes dividing that dimension.
    pub prime_divisors: usize,
}

fn vectors_to_rows(vs: &[Vec<FieldElement>]) -> Vec<Vec<String>> {
    vs.iter()
        .map(|v| v.iter().map(|e| e.to_string()).collect())
        .collect()
}

impl AnalyzeReport {
    pub fn build(field: &Field, mode: Mode, r: &UniserialReport) -> AnalyzeReport {
        AnalyzeReport {
            schema_version: SCHEMA_VERSION,
            command: "analyze".into(),
            field: field.to_string(),
            mode: match mode {
                Mode::Associative => "associative".into(),
                Mode::Lie => "lie".into(),
            },
            uniserial: r.uniserial,
            length: r.length,
            layer_dims: r.socle_chain.layer_dims.clone(),
            chain_dims: r.socle_chain.chain.iter().map(|w| w.dim()).collect(),
            generator: r.generator.as_ref().map(matrix_rows),
            shape: r.shape.as_ref().map(|(p, l)| ShapeReport {
                irreducible: p.to_string(),
                power: *l,
            }),
            companion_basis: r.companion_basis.as_ref().map(matrix_rows),
            expressions: r
                .expressions
                .as_ref()
                .map(|hs| hs.iter().map(|h| h.to_string()).collect()),
            combination: r
                .combination
                .as_ref()
                .map(|cs| cs.iter().map(|c| c.to_string()).collect()),
            residue_degree: r.residue_degree.map(|(d, n)| ResidueReport {
                dimension: d,
                prime_divisors: n,
            }),
            witness: r.witness.as_ref().map(|w| vectors_to_rows(w.basis())),
            witness_layer: r.witness_layer,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(&format!("{k:<16} {v}\n"));
        };
        line("field", self.field.clone());
        line("mode", self.mode.clone());
        line("uniserial", if self.uniserial { "yes".into() } else { "no".into() });
        line("length", self.length.to_string());
        line("layer dims", format!("{:?}", self.layer_dims));
        if let Some(s) = &self.shape {
            line("min poly", format!("({})^{}", s.irreducible, s.power));
        }
        if let Some(g) = &self.generator {
            line("generator", render_rows(g));
        }
        if let Some(hs) = &self.expressions {
            line("expressions", hs.join(" ; "));
        }
        if let Some(cs) = &self.combination {
            line("combination", cs.join(", "));
        }
        if let Some(r) = &self.residue_degree {
            line(
                "residue field",
                format!("degree {} with {} distinct prime(s)", r.dimension, r.prime_divisors),
            );
        }
        if let Some(w) = &self.witness {
            line(
                "witness",
                format!("invariant subspace off layer {}: {}",
                    self.witness_layer.unwrap_or(0), render_rows(w)),
            );
        }
        out
    }
}

fn render_rows(rows: &[Vec<String>]) -> String {
    let body: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", body.join(", "))
}

// ---- primitive ----

#[derive(Debug, Serialize, Deserialize)]
pub struct PrimitiveReport {
    pub schema_version: u32,
    pub command: String,
    /// The coefficient subfield F.
    pub field: String,
    /// The ambient tower K ⊇ F the elements live in.
    pub tower: String,
    /// [F[x_i] : F] for each input element.
    pub degrees: Vec<u64>,
    /// Profile of the first two degrees: a = m·d, b = n·d, gcd d, bound A.
    pub profile: ProfileReport,
    /// First α ∈ F^× with deg(x₁ + α·x₂) = lcm(a, b), if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_alpha: Option<String>,
    /// Nonzero coefficients for a full combination of all elements.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combination: Option<Vec<String>>,
    pub sweep: SweepReport,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProfileReport {
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub m: u64,
    pub n: u64,
    #[serde(rename = "A")]
    pub a_bound: u64,
    pub lcm: u64,
}

impl From<&DegreeProfile> for ProfileReport {
    fn from(p: &DegreeProfile) -> ProfileReport {
        ProfileReport {
            a: p.a,
            b: p.b,
            d: p.d,
            m: p.m,
            n: p.n,
            a_bound: p.a_bound,
            lcm: p.lcm,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SweepReport {
    /// lcm of the two degrees: what a successful combination reaches.
    pub target: u64,
    /// Every nonzero α with the achieved degree of x₁ + α·x₂.
    pub degrees: Vec<(String, u64)>,
    pub failing_alphas: Vec<String>,
    /// Cap on |failing_alphas| (distinct primes of d missing from m·n).
    pub a_bound: u64,
}

impl From<&AlphaSweep> for SweepReport {
    fn from(s: &AlphaSweep) -> SweepReport {
        SweepReport {
            target: s.target,
            degrees: s.degrees.iter().map(|(a, d)| (a.to_string(), *d)).collect(),
            failing_alphas: s.failing_alphas.iter().map(|a| a.to_string()).collect(),
            a_bound: s.a_bound,
        }
    }
}

impl PrimitiveReport {
    pub fn render_text(&self) -> String {
        let p = &self.profile;
        let mut out = String::new();
        out.push_str(&format!("field            {}\n", self.field));
        out.push_str(&format!("tower            {}\n", self.tower));
        out.push_str(&format!("degrees          {:?}\n", self.degrees));
        out.push_str(&format!(
            "profile          a={} b={} d={} m={} n={} A={} lcm={}\n",
            p.a, p.b, p.d, p.m, p.n, p.a_bound, p.lcm
        ));
        match &self.pair_alpha {
            Some(a) => out.push_str(&format!("pair             deg(x1 + {a}·x2) = {}\n", p.lcm)),
            None => out.push_str("pair             none (every α falls short)\n"),
        }
        if let Some(cs) = &self.combination {
            out.push_str(&format!("combination      {}\n", cs.join(", ")));
        }
        out.push_str(&format!(
            "sweep            {} α checked, {} failing (bound {})\n",
            self.sweep.degrees.len(),
            self.sweep.failing_alphas.len(),
            self.sweep.a_bound
        ));
        for (alpha, deg) in &self.sweep.degrees {
            out.push_str(&format!("  α = {alpha:<12} deg = {deg}\n"));
        }
        out
    }
}

// ---- construct ----

#[derive(Debug, Serialize, Deserialize)]
pub struct ConstructReport {
    pub schema_version: u32,
    pub command: String,
    pub kind: String,
    pub params: ParamsReport,
    /// Named quantities of the built instance (degrees, fields, elements).
    pub facts: Vec<FactReport>,
    pub claims: Vec<ClaimReport>,
    pub all_pass: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ParamsReport {
    pub q: u64,
    #[serde(rename = "A")]
    pub prime_count: u64,
    pub p: u64,
    pub seed: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FactReport {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClaimReport {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl ConstructReport {
    pub fn build(
        kind: &str,
        params: &uniserial::constructions::BuildParams,
        facts: Vec<(String, String)>,
        cert: &Certificate,
    ) -> ConstructReport {
        ConstructReport {
            schema_version: SCHEMA_VERSION,
            command: "construct".into(),
            kind: kind.into(),
            params: ParamsReport {
                q: params.q,
                prime_count: params.prime_count,
                p: params.p,
                seed: params.seed,
            },
            facts: facts
                .into_iter()
                .map(|(name, value)| FactReport { name, value })
                .collect(),
            claims: cert
                .claims
                .iter()
                .map(|c| ClaimReport {
                    name: c.name.clone(),
                    pass: c.pass,
                    detail: c.detail.clone(),
                })
                .collect(),
            all_pass: cert.all_pass(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("instance         {}\n", self.kind));
        for f in &self.facts {
            out.push_str(&format!("{:<16} {}\n", f.name, f.value));
        }
        out.push('\n');
        for c in &self.claims {
            let mark = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("[{mark}] {:<28} {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "\n{} of {} claims hold\n",
            self.claims.iter().filter(|c| c.pass).count(),
            self.claims.len()
        ));
        out
    }
}

// ---- jc ----

#[derive(Debug, Serialize, Deserialize)]
pub struct JcReport {
    pub schema_version: u32,
    pub command: String,
    pub field: String,
    pub input: Vec<Vec<String>>,
    /// Semisimple part (squarefree minimal polynomial).
    pub s: Vec<Vec<String>>,
    /// Nilpotent part n = M − s.
    pub n: Vec<Vec<String>>,
    /// Witness polynomial with s = s_poly(M).
    pub s_poly: String,
}

impl JcReport {
    pub fn build(field: &Field, m: &Mat, d: &JCDecomposition) -> JcReport {
        JcReport {
            schema_version: SCHEMA_VERSION,
            command: "jc".into(),
            field: field.to_string(),
            input: matrix_rows(m),
            s: matrix_rows(&d.s),
            n: matrix_rows(&d.n),
            s_poly: d.s_poly.to_string(),
        }
    }

    pub fn render_text(&self) -> String {
        format!(
            "field            {}\nsemisimple s     {}\nnilpotent n      {}\ns_poly           {}\n",
            self.field,
            render_rows(&self.s),
            render_rows(&self.n),
            self.s_poly
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use uniserial::cyclicgen::analyze;

    #[test]
    fn analyze_report_serializes_and_round_trips() {
        let q = Field::rationals();
        let j = Mat::from_ints(&q, &[&[2, 1, 0], &[0, 2, 1], &[0, 0, 2]]);
        let r = analyze(&[j], Mode::Associative).unwrap();
        let report = AnalyzeReport::build(&q, Mode::Associative, &r);
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: AnalyzeReport = serde_json::from_str(&text).unwrap();
        assert!(back.uniserial);
        assert_eq!(back.length, 3);
        assert_eq!(back.schema_version, SCHEMA_VERSION);
        assert_eq!(back.chain_dims, vec![0, 1, 2, 3]);
        // embedded matrices re-parse under the declared field
        let field = Field::parse(&back.field).unwrap();
        for row in back.generator.as_ref().unwrap() {
            for entry in row {
                field.parse_element(entry).unwrap();
            }
        }
    }

    #[test]
    fn witness_appears_for_split_actions() {
        let q = Field::rationals();
        let d = Mat::from_ints(&q, &[&[1, 0], &[0, 2]]);
        let r = analyze(&[d], Mode::Associative).unwrap();
        let report = AnalyzeReport::build(&q, Mode::Associative, &r);
        assert!(!report.uniserial);
        assert!(report.witness.is_some());
        assert!(report.generator.is_none());
        let text = report.render_text();
        assert!(text.contains("uniserial        no"));
        assert!(text.contains("witness"));
    }
}
