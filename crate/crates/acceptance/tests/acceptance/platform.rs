use std::collections::BTreeSet;
use std::fs;
use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use nusus::corpus::{ApplicationProfile, CorpusError, CorpusStore, DocumentMetadata, IngestOutcome, LanguageVariant};
use nusus::exercises::{generate, grade, ClosedCategory, ClosedClasses, ExerciseKind, GenParams, Submission};
use nusus::facets::{FacetValue, Objective, PedagogicalContext};
use nusus::morphology::strip_diacritics;
use nusus::search::{execute, next_from_collection, Collection, Next, Op, Operand, Predicate, Query, RotationSession};
use nusus::{AnnotatedDocument, DocId};
use nusus_service::{router, Service};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

use crate::{ensure, fixtures, Check};

fn fixture_store() -> Result<(tempfile::TempDir, CorpusStore, Vec<AnnotatedDocument>), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    fs::create_dir_all(dir.path().join("levels")).map_err(|e| e.to_string())?;
    fs::write(dir.path().join("levels/primary.txt"), fixtures::PRIMARY_WORDS.replace(' ', "\n")).map_err(|e| e.to_string())?;
    fs::write(dir.path().join("levels/middle.txt"), fixtures::MIDDLE_WORDS.replace(' ', "\n")).map_err(|e| e.to_string())?;
    let store = CorpusStore::open(dir.path()).map_err(|e| e.to_string())?;
    let mut docs = Vec::new();
    for doc in fixtures::corpus() {
        let id = store.ingest_annotated(doc, &ApplicationProfile::default()).map_err(|e| e.to_string())?;
        docs.push(store.get(&id).map_err(|e| e.to_string())?);
    }
    Ok((dir, store, docs))
}

/// Filters by recomputing every facet, then sorts.
fn linear_scan(q: &Query, cp: &PedagogicalContext, store: &CorpusStore, docs: &[AnnotatedDocument]) -> Vec<DocId> {
    let holds = |p: &Predicate, doc: &AnnotatedDocument| {
        let Some(prism) = store.registry().get(&p.prism) else { return false };
        let Ok(v) = prism.compute(doc, cp) else { return false };
        let num = match &v {
            FacetValue::Integer(n) => Some(*n as f64),
            FacetValue::Fraction(x) => Some(*x),
            _ => None,
        };
        let bound = match &p.operand {
            Operand::Int(n) => Some(*n as f64),
            Operand::Fraction(x) => Some(*x),
            _ => None,
        };
        match (p.op, &p.operand, &v) {
            (Op::Eq, Operand::Label(l), FacetValue::Label(s)) => l == s,
            (Op::Eq, _, _) => num.is_some() && num == bound,
            (Op::Le, _, _) => matches!((num, bound), (Some(a), Some(b)) if a <= b),
            (Op::Ge, _, _) => matches!((num, bound), (Some(a), Some(b)) if a >= b),
            (Op::In, Operand::Labels(ls), FacetValue::Label(s)) => ls.contains(s),
            (Op::CountGe, Operand::Count { label, n }, FacetValue::Set(m)) => {
                let c: u64 = if label == "*" { m.values().sum() } else { m.get(label).copied().unwrap_or(0) };
                c >= *n
            }
            _ => false,
        }
    };
    let mut hits: Vec<&AnnotatedDocument> = docs.iter().filter(|d| q.predicates.iter().all(|p| holds(p, d))).collect();
    hits.sort_by(|a, b| (a.line_count, a.word_count, &a.id).cmp(&(b.line_count, b.word_count, &b.id)));
    hits.into_iter().map(|d| d.id.clone()).collect()
}

fn random_predicate(rng: &mut ChaCha8Rng) -> Predicate {
    let count = |rng: &mut ChaCha8Rng, prism: &str, labels: &[&str]| {
        Predicate::count_at_least(prism, labels[rng.gen_range(0..labels.len())], rng.gen_range(1..4))
    };
    match rng.gen_range(0..8) {
        0 => Predicate::new("length", [Op::Le, Op::Ge, Op::Eq][rng.gen_range(0..3)], Operand::Int(rng.gen_range(1..6))),
        1 => Predicate::new("word_count", Op::Le, Operand::Int(rng.gen_range(2..20))),
        2 => Predicate::new("difficulty", Op::Eq, Operand::Int(rng.gen_range(1..4))),
        3 => count(rng, "verb_class", &["sahih", "mutal", "mahmuz", "*"]),
        4 => count(rng, "sentence_type", &["nominal", "verbal", "pro_drop"]),
        5 => Predicate::new("unknown_vocabulary", Op::Le, Operand::Fraction(rng.gen_range(0..7) as f64 / 10.0)),
        6 => count(rng, "representative_elements", &["verb.past", "pos.noun", "verb.sahih"]),
        _ => count(rng, "token_categories", &["verb", "closed_class", "extractable"]),
    }
}

pub fn search() -> Check {
    let (_dir, store, docs) = fixture_store()?;
    ensure!(docs.len() == 20, "fixture has {} documents", docs.len());
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut selective = 0;
    for n in 0..50 {
        let q = Query::new((0..rng.gen_range(1..4)).map(|_| random_predicate(&mut rng)).collect());
        let mut cp = PedagogicalContext::default().with_objective(Objective::ALL[rng.gen_range(0..Objective::ALL.len())]);
        match rng.gen_range(0..3) {
            0 => {}
            1 => cp = cp.with_level("primary"),
            _ => cp = cp.with_level("middle"),
        }
        let got = execute(&q, &cp, &store).map_err(|e| format!("query {n}: {e}"))?;
        let expected = linear_scan(&q, &cp, &store, &docs);
        ensure!(got.doc_ids == expected, "query {n} returned {:?}, scan found {:?}", got.doc_ids, expected);
        let lines: Vec<usize> = expected.iter().map(|id| docs.iter().find(|d| &d.id == id).unwrap().line_count).collect();
        ensure!(lines.windows(2).all(|w| w[0] <= w[1]), "query {n} not ascending by lines");
        if !expected.is_empty() && expected.len() < docs.len() {
            selective += 1;
        }
    }
    ensure!(selective >= 10, "only {selective} queries were selective");
    Ok(())
}

pub fn rotation() -> Check {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    let strategy = proptest::collection::btree_set("[a-z]{1,6}", 0..30);
    runner
        .run(&strategy, |names| {
            let ids: Vec<DocId> = names.iter().map(|n| DocId::new(n.as_str())).collect();
            let mut session =
                RotationSession::new(Collection { doc_ids: ids.clone(), generated_from: PedagogicalContext::default() });
            let mut served = Vec::new();
            while let Next::Doc(id) = next_from_collection(&mut session) {
                served.push(id);
                prop_assert!(served.len() <= ids.len());
            }
            let distinct: BTreeSet<_> = served.iter().collect();
            prop_assert_eq!(distinct.len(), served.len());
            prop_assert_eq!(&served, &ids);
            prop_assert_eq!(next_from_collection(&mut session), Next::Exhausted);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn exercise_soundness() -> Check {
    let docs = fixtures::corpus();
    let tables = ClosedClasses::standard();
    for seed in 0..100u64 {
        let kind = ExerciseKind::ALL[seed as usize % ExerciseKind::ALL.len()];
        let p = GenParams::default().with_seed(seed);
        let start = seed as usize % docs.len();
        let ex = (0..docs.len())
            .find_map(|i| generate(&docs[(start + i) % docs.len()], kind, &p).ok())
            .ok_or(format!("no document has material for {kind}"))?;
        ensure!(!ex.items.is_empty(), "{kind} seed {seed} has no items");
        let g = grade(&ex, &Submission { exercise_id: ex.id.clone(), answers: ex.answer_keys() })
            .map_err(|e| e.to_string())?;
        ensure!(g.score == 1.0, "{kind} seed {seed} scored {}", g.score);
        if kind == ExerciseKind::ClozeSelect {
            for item in &ex.items {
                let options = item.options.as_ref().ok_or("select item without options")?;
                let hits = options.iter().filter(|o| **o == item.answer_key).count();
                ensure!(hits == 1, "key appears {hits} times in seed {seed}");
                let cat = ClosedCategory::ALL
                    .into_iter()
                    .find(|c| c.label() == item.category)
                    .ok_or(format!("unknown category {}", item.category))?;
                let table: BTreeSet<String> =
                    tables.members(cat).iter().map(|w| strip_diacritics(w).into_string()).collect();
                for o in options {
                    ensure!(table.contains(strip_diacritics(o).as_str()), "option {o} is not a {}", item.category);
                }
            }
        }
    }
    Ok(())
}

pub fn metadata() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = CorpusStore::open(dir.path()).map_err(|e| e.to_string())?;
    let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
    let fields = (any::<bool>(), any::<bool>(), any::<bool>(), any::<bool>(), any::<bool>());
    runner
        .run(&fields, |(title, author, level, variant, source)| {
            let md = DocumentMetadata {
                title: if title { "t".into() } else { String::new() },
                author: if author { "a".into() } else { String::new() },
                level: if level { "primary".into() } else { String::new() },
                language_variant: variant.then_some(LanguageVariant::Foreign),
                source: source.then(|| "s".into()),
                ..Default::default()
            };
            let expected: Vec<&str> = [("title", title), ("level", level), ("language_variant", variant)]
                .into_iter()
                .filter(|(_, present)| !present)
                .map(|(name, _)| name)
                .collect();
            match store.ingest_text("المَطَرُ غَزِيرٌ.", md) {
                Err(CorpusError::Rejected(r)) => {
                    prop_assert!(!expected.is_empty());
                    prop_assert_eq!(r.missing, expected);
                    prop_assert!(r.invalid.is_empty());
                }
                Ok(IngestOutcome::Stored(_)) => prop_assert!(expected.is_empty()),
                other => prop_assert!(false, "unexpected outcome {:?}", other),
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

struct Client {
    app: axum::Router,
    rt: tokio::runtime::Runtime,
}

impl Client {
    fn send(&self, method: &str, uri: &str, token: Option<&str>, body: Option<Value>) -> (StatusCode, String) {
        let mut req = Request::builder().method(method).uri(uri);
        if let Some(t) = token {
            req = req.header("authorization", format!("Bearer {t}"));
        }
        let body = body.map_or(Body::empty(), |b| Body::from(b.to_string()));
        let req = req.header("content-type", "application/json").body(body).unwrap();
        self.rt.block_on(async {
            let resp = self.app.clone().oneshot(req).await.unwrap();
            let status = resp.status();
            let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
            (status, String::from_utf8_lossy(&bytes).into_owned())
        })
    }

    fn account(&self, login: &str, role: &str) -> Result<String, String> {
        let reg = json!({"login": login, "credential": "long-enough", "role": role, "level": "primary"});
        let (s, text) = self.send("POST", "/register", None, Some(reg));
        ensure!(s == StatusCode::CREATED, "register {login}: {s} {text}");
        let (s, text) = self.send("POST", "/login", None, Some(json!({"login": login, "credential": "long-enough"})));
        ensure!(s == StatusCode::OK, "login {login}: {s} {text}");
        let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        Ok(v["token"].as_str().ok_or("no token")?.to_owned())
    }
}

pub fn service() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let service = Service::open(dir.path()).map_err(|e| e.to_string())?;
    for (i, doc) in fixtures::corpus().into_iter().enumerate().take(8) {
        let text = doc.raw_text.clone();
        match service.store().ingest_text(&text, fixtures::metadata(&format!("text {i}"), "primary")) {
            Ok(IngestOutcome::Stored(_)) => {}
            other => return Err(format!("seeding text {i}: {other:?}")),
        }
    }
    let before = service.store().summaries().map_err(|e| e.to_string())?.len();
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build().map_err(|e| e.to_string())?;
    let service = Arc::new(service);
    let c = Client { app: router(service.clone()), rt };
    let student = c.account("student", "student")?;
    let teacher = c.account("teacher", "teacher")?;

    for kind in ["cloze_wordbank", "cloze_select", "role_mcq", "extraction", "any"] {
        let (s, text) = c.send("POST", "/student/exercise", Some(&student), Some(json!({"exercise_category": kind})));
        if s == StatusCode::NOT_FOUND {
            continue;
        }
        ensure!(s == StatusCode::OK, "{kind}: {s} {text}");
        ensure!(!text.contains("answer_key"), "{kind} payload leaks keys");
    }

    let add = json!({"text": "القَمَرُ جَمِيلٌ.", "metadata": {"title": "x", "level": "primary", "language_variant": "native"}});
    let teacher_only: [(&str, &str, Option<Value>); 3] = [
        ("POST", "/teacher/search", Some(json!({}))),
        ("POST", "/teacher/texts", Some(add)),
        ("GET", "/teacher/texts/anything", None),
    ];
    let student_only: [(&str, &str, Option<Value>); 2] = [
        ("POST", "/student/exercise", Some(json!({}))),
        ("POST", "/student/submit", Some(json!({"exercise_id": "x", "answers": []}))),
    ];
    for (calls, wrong) in [(&teacher_only[..], &student), (&student_only[..], &teacher)] {
        for (m, uri, body) in calls {
            let (s, _) = c.send(m, uri, Some(wrong), body.clone());
            ensure!(s == StatusCode::FORBIDDEN, "{m} {uri} with the other role gave {s}");
            let (s, _) = c.send(m, uri, None, body.clone());
            ensure!(s == StatusCode::UNAUTHORIZED, "{m} {uri} without a token gave {s}");
        }
    }

    let (s, text) = c.send("POST", "/student/exercise", Some(&student), Some(json!({"exercise_category": "cloze_wordbank"})));
    ensure!(s == StatusCode::OK, "exercise for grading: {s} {text}");
    let ex: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let n = ex["items"].as_array().map_or(0, Vec::len);
    let sub = json!({"exercise_id": ex["id"], "answers": vec!["جواب"; n]});
    let first = c.send("POST", "/student/submit", Some(&student), Some(sub.clone()));
    let second = c.send("POST", "/student/submit", Some(&student), Some(sub));
    ensure!(first.0 == StatusCode::OK, "submit: {} {}", first.0, first.1);
    ensure!(first == second, "grading changed between submissions");

    let after = service.store().summaries().map_err(|e| e.to_string())?.len();
    ensure!(after == before, "role-crossed calls changed the corpus: {before} before, {after} after");
    Ok(())
}
