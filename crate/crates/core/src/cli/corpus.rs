use super::{run_verify, CliError, Spec};

/// A bundled example and the exit code `verify` must produce on it.
#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub json: &'static str,
    pub expected_exit: i32,
}

impl CorpusEntry {
    pub fn spec(&self) -> Result<Spec, CliError> {
        Spec::parse(self.json)
    }
}

const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "EX-A",
        json: include_str!("../../corpus/ex-a.json"),
        expected_exit: 0,
    },
    CorpusEntry {
        name: "EX-B",
        json: include_str!("../../corpus/ex-b.json"),
        expected_exit: 1,
    },
    CorpusEntry {
        name: "EX-C",
        json: include_str!("../../corpus/ex-c.json"),
        expected_exit: 1,
    },
    CorpusEntry {
        name: "EX-D",
        json: include_str!("../../corpus/ex-d.json"),
        expected_exit: 0,
    },
    CorpusEntry {
        name: "EX-E",
        json: include_str!("../../corpus/ex-e.json"),
        expected_exit: 1,
    },
    CorpusEntry {
        name: "EX-F",
        json: include_str!("../../corpus/ex-f.json"),
        expected_exit: 1,
    },
    CorpusEntry {
        name: "EX-G",
        json: include_str!("../../corpus/ex-g.json"),
        expected_exit: 0,
    },
];

pub fn corpus() -> &'static [CorpusEntry] {
    CORPUS
}

/// Case-insensitive lookup by name (`EX-A` or `ex-a`).
pub fn find_example(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

#[derive(Clone, Debug)]
pub struct CorpusOutcome {
    pub name: &'static str,
    pub expected_exit: i32,
    pub exit: i32,
    pub report: Option<super::Report>,
}

impl CorpusOutcome {
    pub fn matches(&self) -> bool {
        self.exit == self.expected_exit
    }
}

pub fn run_corpus() -> Vec<CorpusOutcome> {
    CORPUS
        .iter()
        .map(|e| match e.spec() {
            Ok(spec) => {
                let report = run_verify(&spec);
                CorpusOutcome {
                    name: e.name,
                    expected_exit: e.expected_exit,
                    exit: report.exit_code(),
                    report: Some(report),
                }
            }
            Err(_) => CorpusOutcome {
                name: e.name,
                expected_exit: e.expected_exit,
                exit: 2,
                report: None,
            },
        })
        .collect()
}
