use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cohomology::CohomologyResult;
use crate::foliation::Chart;
use crate::hamiltonian::{Classification, ImageCheck, Verdict, WitnessReport};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecSummary {
    pub name: Option<String>,
    pub q: usize,
    pub p: usize,
    pub coordinates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub passed: bool,
    pub witness: Option<WitnessReport>,
}

impl VerdictReport {
    pub fn from_verdict(v: &Verdict, chart: &Chart) -> Self {
        VerdictReport {
            passed: v.passed(),
            witness: v.witness().map(|w| w.describe(chart)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub hamiltonian: VerdictReport,
    pub strong: VerdictReport,
    pub transversal: VerdictReport,
    pub tame: VerdictReport,
}

impl ClassificationReport {
    pub fn new(c: &Classification, chart: &Chart) -> Self {
        ClassificationReport {
            hamiltonian: VerdictReport::from_verdict(&c.hamiltonian, chart),
            strong: VerdictReport::from_verdict(&c.strong, chart),
            transversal: VerdictReport::from_verdict(&c.transversal, chart),
            tame: VerdictReport::from_verdict(&c.tame, chart),
        }
    }

    pub fn verdicts(&self) -> [(&'static str, &VerdictReport); 4] {
        [
            ("hamiltonian", &self.hamiltonian),
            ("strong", &self.strong),
            ("transversal", &self.transversal),
            ("tame", &self.tame),
        ]
    }

    pub fn flags(&self) -> (bool, bool, bool, bool) {
        (
            self.hamiltonian.passed,
            self.strong.passed,
            self.transversal.passed,
            self.tame.passed,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageCheckRow {
    pub point: Vec<String>,
    pub rank_w: usize,
    pub dim_image_cap_tf: usize,
    pub dim_char_dist: usize,
    pub annihilator_consistent: bool,
}

impl From<&ImageCheck> for ImageCheckRow {
    fn from(c: &ImageCheck) -> Self {
        ImageCheckRow {
            point: c.point.iter().map(|r| r.to_string()).collect(),
            rank_w: c.rank_w,
            dim_image_cap_tf: c.dim_image_cap_tf,
            dim_char_dist: c.dim_char_dist,
            annihilator_consistent: c.consistent(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub identity: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySummary {
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentitySummary {
    pub fn record(&mut self, identity: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            self.failures.push(IdentityFailure {
                identity: identity.to_string(),
                detail: detail(),
            });
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketReport {
    pub f: String,
    pub g: String,
    pub extended: bool,
    pub value: String,
}

/// Result of one command. The exit code is derived from this content alone.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub spec: SpecSummary,
    pub classification: Option<ClassificationReport>,
    pub image_checks: Vec<ImageCheckRow>,
    pub identities: Option<IdentitySummary>,
    pub fundamental_form: Option<VerdictReport>,
    pub cohomology: Vec<CohomologyResult>,
    pub bracket: Option<BracketReport>,
    pub errors: Vec<String>,
}

impl Report {
    /// 2 if an input or precondition error was recorded, 1 if any verdict or identity
    /// failed, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() {
            return 2;
        }
        let verdict_failed = self
            .classification
            .as_ref()
            .is_some_and(|c| c.verdicts().iter().any(|(_, v)| !v.passed));
        let identity_failed = self.identities.as_ref().is_some_and(|s| s.failed > 0);
        let image_failed = self.image_checks.iter().any(|r| !r.annihilator_consistent);
        let form_failed = self.fundamental_form.as_ref().is_some_and(|v| !v.passed);
        if verdict_failed || identity_failed || image_failed || form_failed {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let name = self.spec.name.as_deref().unwrap_or("spec");
        let _ = writeln!(
            out,
            "{name}: q={} p={} coordinates [{}]",
            self.spec.q,
            self.spec.p,
            self.spec.coordinates.join(", ")
        );
        if let Some(c) = &self.classification {
            for (label, v) in c.verdicts() {
                match &v.witness {
                    None => {
                        let _ = writeln!(out, "  {label:<12} pass");
                    }
                    Some(w) => {
                        let _ = writeln!(
                            out,
                            "  {label:<12} FAIL  {} at {:?}: {}",
                            w.condition, w.indices, w.residual
                        );
                    }
                }
            }
        }
        for r in &self.image_checks {
            let _ = writeln!(
                out,
                "  point ({}): rank W = {}, dim(H0 ∩ TF) = {}, dim CharDist = {}{}",
                r.point.join(", "),
                r.rank_w,
                r.dim_image_cap_tf,
                r.dim_char_dist,
                if r.annihilator_consistent {
                    ""
                } else {
                    "  [h(ann CharDist) mismatch]"
                }
            );
        }
        if let Some(s) = &self.identities {
            let _ = writeln!(out, "  identities: {} checked, {} failed", s.checked, s.failed);
            for f in &s.failures {
                let _ = writeln!(out, "    {}: {}", f.identity, f.detail);
            }
        }
        if let Some(v) = &self.fundamental_form {
            match &v.witness {
                None => {
                    let _ = writeln!(out, "  fundamental form: pass");
                }
                Some(w) => {
                    let _ = writeln!(out, "  fundamental form: FAIL  {} at {:?}", w.condition, w.indices);
                }
            }
        }
        for c in &self.cohomology {
            let _ = writeln!(
                out,
                "  {} k={} D={}: cochains {}, kernel {}, image in kernel {}, dim {}",
                c.theory, c.k, c.max_degree, c.dim_cochains, c.dim_kernel, c.dim_image_in_kernel, c.dim_twisted
            );
            if let Some(basis) = &c.kernel_basis {
                for b in basis {
                    let _ = writeln!(out, "    {b}");
                }
            }
        }
        if let Some(b) = &self.bracket {
            let prime = if b.extended { "'" } else { "" };
            let _ = writeln!(out, "  {{{}, {}}}{prime} = {}", b.f, b.g, b.value);
        }
        for e in &self.errors {
            let _ = writeln!(out, "  error: {e}");
        }
        out
    }
}
