//! HTTP transport over [`crate::api::handle`].

use axum::body::Bytes;
use axum::http::{header, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::Router;
use tokio::net::TcpListener;

async fn route(method: Method, uri: Uri, body: Bytes) -> Response {
    let body = String::from_utf8_lossy(&body).into_owned();
    let path = uri.path().to_owned();
    let (status, out) = tokio::task::spawn_blocking(move || crate::api::handle(method.as_str(), &path, &body))
        .await
        .unwrap_or_else(|_| {
            (500, r#"{"ok":false,"error":{"code":"internal","message":"request panicked"}}"#.to_owned())
        });
    let status = StatusCode::from_u16(status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, [(header::CONTENT_TYPE, "application/json")], out).into_response()
}

/// Every path goes to the same handler; routing happens in `api`.
pub fn router() -> Router {
    Router::new().fallback(route)
}

/// Serve until the process is stopped.
pub async fn run(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}
