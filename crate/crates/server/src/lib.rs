//! Stateless HTTP surface over the classifier and renderer.
//!
//! | route | body |
//! |---|---|
//! | `GET /api/classify?n=&re=&im=&budget=` | classification record |
//! | `GET /api/orbit?n=&re=&im=&seed=v0\|v1\|custom&zre=&zim=&max=&budget=` | `{trace, outcome, …}` |
//! | `GET /api/examples` | reference parameters |
//! | `GET /tiles/{plane}/{n}/{zoom}/{tx}/{ty}.png?re=&im=&budget=` | PNG tile |

mod api;
mod error;
mod query;
mod tiles;

use std::net::SocketAddr;
use std::sync::Arc;

use axum::routing::get;
use axum::Router;
use tower_http::cors::CorsLayer;

pub use api::{OrbitResponse, DEFAULT_TRACE, MAX_BUDGET, MAX_TRACE};
pub use error::ApiError;
pub use tiles::{AppState, Tile, TileCache, CACHE_CAPACITY, MAX_TILE_BUDGET};

pub const DEFAULT_ADDR: &str = "127.0.0.1:8642";

pub fn router() -> Router {
    router_with_state(Arc::new(AppState::default()))
}

pub fn router_with_state(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/classify", get(api::classify_handler))
        .route("/api/orbit", get(api::orbit_handler))
        .route("/api/examples", get(api::examples_handler))
        .route("/tiles/{plane}/{n}/{zoom}/{tx}/{ty}", get(tiles::tile_handler))
        .fallback(|| async { ApiError::not_found("no such route") })
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}
