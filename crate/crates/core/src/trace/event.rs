use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, MonomialOrder};
use crate::signature::{Genealogy, RPos, Signature};

use super::TraceError;

/// One line of the JSON Lines trace: a sequence number plus a kind-tagged payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub seq: u64,
    #[serde(flatten)]
    pub kind: EventKind,
}

/// Which reductor check of `IsReducible` rejected a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RejectCheck {
    B,
    C,
    D,
}

/// Target properties of a descent step (the one that was violated).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    P1,
    P2,
    P3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum EventKind {
    Header {
        nvars: usize,
        order: MonomialOrder,
        prime: u32,
        m: usize,
    },
    InputAdded {
        pos: RPos,
        sig: Signature,
        hm: Monomial,
    },
    CallBegin {
        call: usize,
    },
    CallEnd {
        call: usize,
        basis: Vec<RPos>,
    },
    DegreeStep {
        call: usize,
        d: u32,
        pairs: usize,
    },
    CritPairCreated {
        t: Monomial,
        u1: Monomial,
        p1: RPos,
        u2: Monomial,
        p2: RPos,
        sig: Signature,
        degree: u32,
    },
    F5CritPairReject {
        u1: Monomial,
        p1: RPos,
        u2: Monomial,
        p2: RPos,
        part: u8,
        sig: Signature,
        divisor: RPos,
    },
    SPolCreated {
        pos: RPos,
        sig: Signature,
        hm: Option<Monomial>,
        genealogy: Genealogy,
    },
    RewrittenReject {
        u1: Monomial,
        p1: RPos,
        u2: Monomial,
        p2: RPos,
        part: u8,
        rewriter: RPos,
    },
    ToDoPop {
        pos: RPos,
        sig: Signature,
    },
    PhiPreReduce {
        pos: RPos,
        reductors: Vec<RPos>,
        hm_before: Option<Monomial>,
        hm_after: Option<Monomial>,
    },
    ReductionStep {
        pos: RPos,
        sig: Signature,
        reductor: RPos,
        mult: Monomial,
        reductor_sig: Signature,
        hm_before: Monomial,
        hm_after: Option<Monomial>,
    },
    ReductorRejected {
        pos: RPos,
        candidate: RPos,
        mult: Monomial,
        check: RejectCheck,
        /// Divisor head position for (b), rewriter for (c).
        witness: Option<RPos>,
    },
    NewFromTopReduction {
        pos: RPos,
        sig: Signature,
        hm: Option<Monomial>,
        genealogy: Genealogy,
    },
    ReductionToZero {
        pos: RPos,
        sig: Signature,
    },
    DoneInserted {
        pos: RPos,
        sig: Signature,
        hm: Monomial,
        call: usize,
    },
    RuleAdded {
        index: usize,
        mono: Monomial,
        pos: RPos,
    },
    DescentStep {
        instance: usize,
        step: usize,
        property: Property,
        pos: RPos,
        mono: Monomial,
        len: usize,
    },
    DescentDone {
        instance: usize,
        steps: usize,
        len: usize,
    },
}

impl EventKind {
    pub fn name(&self) -> &'static str {
        match self {
            EventKind::Header { .. } => "Header",
            EventKind::InputAdded { .. } => "InputAdded",
            EventKind::CallBegin { .. } => "CallBegin",
            EventKind::CallEnd { .. } => "CallEnd",
            EventKind::DegreeStep { .. } => "DegreeStep",
            EventKind::CritPairCreated { .. } => "CritPairCreated",
            EventKind::F5CritPairReject { .. } => "F5CritPairReject",
            EventKind::SPolCreated { .. } => "SPolCreated",
            EventKind::RewrittenReject { .. } => "RewrittenReject",
            EventKind::ToDoPop { .. } => "ToDoPop",
            EventKind::PhiPreReduce { .. } => "PhiPreReduce",
            EventKind::ReductionStep { .. } => "ReductionStep",
            EventKind::ReductorRejected { .. } => "ReductorRejected",
            EventKind::NewFromTopReduction { .. } => "NewFromTopReduction",
            EventKind::ReductionToZero { .. } => "ReductionToZero",
            EventKind::DoneInserted { .. } => "DoneInserted",
            EventKind::RuleAdded { .. } => "RuleAdded",
            EventKind::DescentStep { .. } => "DescentStep",
            EventKind::DescentDone { .. } => "DescentDone",
        }
    }
}

/// Append-only event sink with monotone sequence numbers.
#[derive(Clone, Debug, Default)]
pub struct TraceLog {
    events: Vec<TraceEvent>,
}

impl TraceLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_events(events: Vec<TraceEvent>) -> Self {
        TraceLog { events }
    }

    pub fn emit(&mut self, kind: EventKind) -> u64 {
        let seq = self.events.len() as u64;
        self.events.push(TraceEvent { seq, kind });
        seq
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn next_seq(&self) -> u64 {
        self.events.len() as u64
    }

    pub fn count(&self, name: &str) -> usize {
        self.events.iter().filter(|e| e.kind.name() == name).count()
    }

    pub fn write_jsonl<W: Write>(&self, w: W) -> Result<(), TraceError> {
        write_jsonl(&self.events, w)
    }
}

pub fn write_jsonl<W: Write>(events: &[TraceEvent], mut w: W) -> Result<(), TraceError> {
    for e in events {
        serde_json::to_writer(&mut w, e)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Reads one event per non-blank line.
pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<TraceEvent>, TraceError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let ev: TraceEvent = serde_json::from_str(&line).map_err(|source| TraceError::BadLine {
            line: i + 1,
            source,
        })?;
        out.push(ev);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_round_trip_and_field_names() {
        let mut log = TraceLog::new();
        log.emit(EventKind::Header {
            nvars: 2,
            order: MonomialOrder::DegRevLex,
            prime: 7,
            m: 2,
        });
        log.emit(EventKind::RuleAdded {
            index: 1,
            mono: Monomial::new(vec![0, 1]),
            pos: 2,
        });
        log.emit(EventKind::ReductorRejected {
            pos: 3,
            candidate: 1,
            mult: Monomial::new(vec![1, 0]),
            check: RejectCheck::C,
            witness: Some(2),
        });
        let mut buf = Vec::new();
        log.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[1],
            r#"{"seq":1,"kind":"RuleAdded","index":1,"mono":[0,1],"pos":2}"#
        );
        assert!(lines[0].contains(r#""order":"degrevlex""#));
        assert!(lines[2].contains(r#""check":"c""#));
        let back = read_jsonl(&buf[..]).unwrap();
        assert_eq!(back, log.events());
    }

    #[test]
    fn bad_line_reports_position() {
        let text = "{\"seq\":0,\"kind\":\"CallBegin\",\"call\":1}\nnot json\n";
        match read_jsonl(text.as_bytes()) {
            Err(TraceError::BadLine { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
