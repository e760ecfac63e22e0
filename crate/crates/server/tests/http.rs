use axum::body::Body;
use axum::http::{header, Request, StatusCode};
use axum::Router;
use bubbledyn_server::router;
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

async fn get(app: &Router, uri: &str) -> (StatusCode, axum::http::HeaderMap, Vec<u8>) {
    get_with(app, Request::get(uri).body(Body::empty()).unwrap()).await
}

async fn get_with(app: &Router, req: Request<Body>) -> (StatusCode, axum::http::HeaderMap, Vec<u8>) {
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let headers = res.headers().clone();
    let body = res.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, headers, body)
}

async fn json(app: &Router, uri: &str) -> (StatusCode, Value) {
    let (status, headers, body) = get(app, uri).await;
    assert_eq!(headers[header::CONTENT_TYPE], "application/json", "{uri}");
    (status, serde_json::from_slice(&body).unwrap())
}

#[tokio::test]
async fn classify_examples() {
    let app = router();
    let (s, v) = json(&app, "/api/classify?n=3&re=0.16&im=0").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["kind"], "cantor_bubbles");
    assert_eq!(v["subcase"], "case3b");
    assert!(v["evidence"]["trap_active"].as_bool().unwrap());

    let (s, v) = json(&app, "/api/classify?n=3&re=0&im=-1").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["kind"], "cantor_set");
}

#[tokio::test]
async fn classify_errors() {
    let app = router();
    for (uri, code) in [
        ("/api/classify?n=3&re=0&im=0", StatusCode::BAD_REQUEST),
        ("/api/classify?n=1&re=0.1&im=0", StatusCode::BAD_REQUEST),
        ("/api/classify?n=3&re=0.1", StatusCode::BAD_REQUEST),
        ("/api/classify?n=3&re=0.1&im=0&budget=10", StatusCode::BAD_REQUEST),
        ("/api/classify?n=3&re=abc&im=0", StatusCode::UNPROCESSABLE_ENTITY),
        ("/api/classify?n=three&re=0.1&im=0", StatusCode::UNPROCESSABLE_ENTITY),
        ("/api/classify?n=3&re=nan&im=0", StatusCode::UNPROCESSABLE_ENTITY),
    ] {
        let (s, v) = json(&app, uri).await;
        assert_eq!(s, code, "{uri}");
        assert!(v["error"].is_string() && v["detail"].is_string(), "{uri}: {v}");
    }
}

#[tokio::test]
async fn orbit_examples() {
    let app = router();
    let lam = 3f64.sqrt() / 9.0;
    let (s, v) = json(&app, &format!("/api/orbit?n=3&re={lam}&im=0&seed=v1&max=5")).await;
    assert_eq!(s, StatusCode::OK);
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 2);
    assert!((trace[0]["re"].as_f64().unwrap() - 3f64.sqrt() / 3.0).abs() < 1e-12);
    assert_eq!(trace[1], "infinity");
    assert_eq!(v["outcome"], "escaped");
    assert_eq!(v["steps"], 1);

    let (_, v) = json(&app, "/api/orbit?n=3&re=0.16&im=0&seed=v0").await;
    assert_eq!((v["outcome"].as_str(), v["steps"].as_u64()), (Some("trapped"), Some(0)));
    let (_, v) = json(&app, "/api/orbit?n=3&re=0.16&im=0&seed=v1").await;
    assert_eq!((v["outcome"].as_str(), v["steps"].as_u64()), (Some("trapped"), Some(2)));

    let (_, v) = json(&app, "/api/orbit?n=3&re=0.16&im=0&seed=custom&zre=0.48&zim=0&max=1").await;
    assert_eq!(v["trace"].as_array().unwrap().len(), 1);
    assert_eq!(v["steps"], 2);

    let (s, _) = json(&app, "/api/orbit?n=3&re=0.16&im=0&seed=v7").await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = json(&app, "/api/orbit?n=3&re=0.16&im=0&seed=custom").await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn examples_round_trip_through_classify() {
    let app = router();
    let (s, v) = json(&app, "/api/examples").await;
    assert_eq!(s, StatusCode::OK);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let (_, again) = json(&app, "/api/examples").await;
    assert_eq!(v, again);
    for row in rows {
        let uri = format!(
            "/api/classify?n={}&re={}&im={}",
            row["n"], row["re"], row["im"]
        );
        let (s, c) = json(&app, &uri).await;
        assert_eq!(s, StatusCode::OK);
        assert_eq!(c["kind"], row["kind"], "{}", row["label"]);
        assert_eq!(c["subcase"], row["subcase"], "{}", row["label"]);
    }
}

#[tokio::test]
async fn parameter_tile_is_stable_with_etag() {
    let app = router();
    let uri = "/tiles/param/3/0/0/0.png?budget=60";
    let (s, h, a) = get(&app, uri).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(h[header::CONTENT_TYPE], "image/png");
    assert_eq!(&a[..8], b"\x89PNG\r\n\x1a\n");
    let etag = h[header::ETAG].to_str().unwrap().to_string();
    assert!(etag.starts_with('"') && etag.len() == 66);

    // A fresh service renders the same bytes.
    let (_, h2, b) = get(&router(), uri).await;
    assert_eq!(a, b);
    assert_eq!(h2[header::ETAG], etag.as_str());

    let req = Request::get(uri)
        .header(header::IF_NONE_MATCH, &etag)
        .body(Body::empty())
        .unwrap();
    let (s, h, body) = get_with(&app, req).await;
    assert_eq!(s, StatusCode::NOT_MODIFIED);
    assert!(body.is_empty());
    assert_eq!(h[header::ETAG], etag.as_str());

    let req = Request::get(uri)
        .header(header::IF_NONE_MATCH, "\"other\"")
        .body(Body::empty())
        .unwrap();
    assert_eq!(get_with(&app, req).await.0, StatusCode::OK);
}

#[tokio::test]
async fn julia_tile_has_superattracting_hue() {
    let app = router();
    let (s, _, png) = get(&app, "/tiles/julia/3/2/1/1.png?re=0.2722&im=0&budget=100").await;
    assert_eq!(s, StatusCode::OK);
    let mut reader = png::Decoder::new(std::io::Cursor::new(png)).read_info().unwrap();
    let mut buf = vec![0; reader.output_buffer_size().unwrap()];
    reader.next_frame(&mut buf).unwrap();
    let style = bubbledyn_render::RenderStyle::default();
    // Hue of some attractor appears, scaled by the convergence-time shading.
    let tinted = buf.chunks_exact(4).any(|p| {
        style.attractor_hues.iter().any(|h| {
            let k = p[0] as f64 / h[0] as f64;
            k > 0.2 && (0..3).all(|i| (p[i] as f64 - k * h[i] as f64).abs() <= 2.0)
        })
    });
    assert!(tinted);
}

#[tokio::test]
async fn tile_errors() {
    let app = router();
    for (uri, code) in [
        ("/tiles/param/3/0/1/0.png", StatusCode::NOT_FOUND),
        ("/tiles/param/3/2/4/0.png", StatusCode::NOT_FOUND),
        ("/tiles/param/3/99/0/0.png", StatusCode::NOT_FOUND),
        ("/tiles/param/3/0/0/0.jpg", StatusCode::NOT_FOUND),
        ("/tiles/julia/3/0/0/0.png", StatusCode::BAD_REQUEST),
        ("/tiles/julia/3/0/0/0.png?re=0&im=0", StatusCode::BAD_REQUEST),
        ("/tiles/julia/3/0/0/0.png?re=x&im=0", StatusCode::BAD_REQUEST),
        ("/tiles/moon/3/0/0/0.png", StatusCode::BAD_REQUEST),
        ("/tiles/param/1/0/0/0.png", StatusCode::BAD_REQUEST),
        ("/tiles/param/3/a/0/0.png", StatusCode::BAD_REQUEST),
        ("/nowhere", StatusCode::NOT_FOUND),
    ] {
        let (s, h, body) = get(&app, uri).await;
        assert_eq!(s, code, "{uri}");
        assert_eq!(h[header::CONTENT_TYPE], "application/json", "{uri}");
        let v: Value = serde_json::from_slice(&body).unwrap();
        assert!(v["error"].is_string(), "{uri}");
    }
}

#[tokio::test]
async fn cors_allows_any_origin() {
    let app = router();
    let req = Request::get("/api/examples")
        .header(header::ORIGIN, "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let (_, h, _) = get_with(&app, req).await;
    assert_eq!(h[header::ACCESS_CONTROL_ALLOW_ORIGIN], "*");
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_identical_requests_agree() {
    let app = router();
    let uri = "/tiles/julia/3/1/1/0.png?re=0.16&im=0&budget=50";
    let handles: Vec<_> = (0..6)
        .map(|_| {
            let app = app.clone();
            tokio::spawn(async move { get(&app, uri).await })
        })
        .collect();
    let mut bodies = Vec::new();
    for h in handles {
        let (s, _, b) = h.await.unwrap();
        assert_eq!(s, StatusCode::OK);
        bodies.push(b);
    }
    assert!(bodies.windows(2).all(|w| w[0] == w[1]));
}
