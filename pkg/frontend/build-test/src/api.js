// Thin typed client. The transport is injectable so contract tests can run
// against recorded fixtures without a server.
export class ApiRequestError extends Error {
    constructor(code, message, status) {
        super(message);
        this.code = code;
        this.status = status;
    }
}
export class ApiClient {
    constructor(transport, base = "") {
        this.transport = transport;
        this.base = base;
    }
    async get(path) {
        const response = await this.transport(this.base + path);
        return this.unwrap(response);
    }
    async post(path, body) {
        const response = await this.transport(this.base + path, {
            method: "POST",
            body: JSON.stringify(body),
            headers: { "content-type": "application/json" },
        });
        return this.unwrap(response);
    }
    async unwrap(response) {
        const data = (await response.json());
        if (!response.ok) {
            const error = data?.error ?? { code: "HttpError", message: `status ${response.status}` };
            throw new ApiRequestError(error.code, error.message, response.status);
        }
        return data;
    }
    meta() {
        return this.get("/api/meta");
    }
    article(id) {
        return this.get(`/api/article/${encodeURIComponent(id)}`);
    }
    query(criteria, tracking) {
        const body = { criteria };
        if (tracking && (tracking.keyword || tracking.author)) {
            body.tracking = tracking;
        }
        return this.post("/api/query", body);
    }
    network(criteria, members) {
        return this.post("/api/network", { criteria, members });
    }
    target(criteria, id) {
        return this.post("/api/target", { criteria, id });
    }
    uploadAbstract(text) {
        return this.post("/api/upload-abstract", { text });
    }
    search(keyword, author) {
        const params = new URLSearchParams();
        if (keyword)
            params.set("keyword", keyword);
        if (author)
            params.set("author", author);
        return this.get(`/api/search?${params.toString()}`);
    }
}
