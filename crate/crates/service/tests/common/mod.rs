#![allow(dead_code)]

use std::fs;
use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use axum::Router;
use nusus::corpus::{DocumentMetadata, IngestOutcome, LanguageVariant};
use nusus::morphology::Lexicon;
use nusus::DocId;
use nusus_service::{router, Service};
use serde_json::Value;
use tower::ServiceExt;

pub const SENTENCES: &[&str] = &[
    "جَلَسَ رَجُلٌ أَعْمَى.",
    "طَلَعَتِ الشَّمْسُ.",
    "أَكَلُوا.",
    "كَتَبَ الوَلَدُ الدَّرْسَ.",
    "المَطَرُ غَزِيرٌ.",
    "أَنَا الآنَ مَشْغُولٌ بِهَذَا.",
    "هَذِهِ مَدْرَسَةٌ كَبِيرَةٌ.",
    "نَامَ الطَّالِبُ.",
    "قَرَأَ المُعَلِّمُ الرِّسَالَةَ.",
    "ذَهَبَ مُحَمَّدٌ إِلَى المَدْرَسَةِ.",
    "هُوَ فِي البَيْتِ.",
    "وَقَفَ الوَلَدُ أَمَامَ البَابِ.",
];

pub fn metadata(title: &str, level: &str) -> DocumentMetadata {
    DocumentMetadata {
        title: title.to_owned(),
        author: "fixture".to_owned(),
        level: level.to_owned(),
        language_variant: Some(LanguageVariant::Native),
        ..Default::default()
    }
}

/// A service over a fresh corpus holding `n` texts; text `i` has
/// `1 + i % 4` lines.
pub fn service_with_texts(n: usize) -> (tempfile::TempDir, Arc<Service>, Vec<DocId>) {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir_all(dir.path().join("levels")).unwrap();
    fs::write(dir.path().join("levels/primary.txt"), "جلس\nرجل\nأعمى\nطلعت\nشمس\nمطر\nغزير\nأنا\n").unwrap();
    let service = Service::open(dir.path()).unwrap();
    service.store().extend_lexicon(Lexicon::starter()).unwrap();
    let mut ids = Vec::new();
    for i in 0..n {
        let lines: Vec<&str> = (0..1 + i % 4).map(|j| SENTENCES[(i * 5 + j * 3) % SENTENCES.len()]).collect();
        match service.store().ingest_text(&lines.join("\n"), metadata(&format!("text {i}"), "primary")).unwrap() {
            IngestOutcome::Stored(id) => ids.push(id),
            other => panic!("{other:?}"),
        }
    }
    (dir, Arc::new(service), ids)
}

pub struct Client {
    pub app: Router,
}

impl Client {
    pub fn new(service: Arc<Service>) -> Self {
        Client { app: router(service) }
    }

    pub async fn send(&self, method: &str, uri: &str, token: Option<&str>, body: Option<Value>) -> (StatusCode, Value, String) {
        let mut req = Request::builder().method(method).uri(uri);
        if let Some(t) = token {
            req = req.header("authorization", format!("Bearer {t}"));
        }
        let req = match body {
            Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())).unwrap(),
            None => req.body(Body::empty()).unwrap(),
        };
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
        let text = String::from_utf8(bytes.to_vec()).unwrap();
        let json = serde_json::from_str(&text).unwrap_or(Value::Null);
        (status, json, text)
    }

    pub async fn post(&self, uri: &str, token: Option<&str>, body: Value) -> (StatusCode, Value, String) {
        self.send("POST", uri, token, Some(body)).await
    }

    /// Registers and logs in; returns the token.
    pub async fn account(&self, login: &str, role: &str) -> String {
        let body = serde_json::json!({"login": login, "credential": "secret-pass", "role": role, "level": "primary"});
        let (status, _, text) = self.post("/register", None, body).await;
        assert_eq!(status, StatusCode::CREATED, "{text}");
        let (status, json, text) =
            self.post("/login", None, serde_json::json!({"login": login, "credential": "secret-pass"})).await;
        assert_eq!(status, StatusCode::OK, "{text}");
        json["token"].as_str().unwrap().to_owned()
    }
}
