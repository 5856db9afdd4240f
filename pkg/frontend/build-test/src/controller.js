// Query lifecycle: one /api/query per slider or tracking change, with
// stale in-flight responses discarded by sequence number.
import { hasActiveCriteria, setSlider, setTracking, initialState, } from "./state.js";
export class Controller {
    constructor(api, events) {
        this.api = api;
        this.events = events;
        this.state = initialState();
        this.sequence = 0;
    }
    async changeSlider(aspect, choice) {
        this.state = setSlider(this.state, aspect, choice);
        await this.refresh();
    }
    async changeTracking(keyword, author) {
        this.state = setTracking(this.state, keyword, author);
        await this.refresh();
    }
    restore(state) {
        this.state = state;
        return this.refresh();
    }
    async refresh() {
        const ticket = ++this.sequence;
        if (!hasActiveCriteria(this.state)) {
            this.events.onQuery(null, this.state);
            return;
        }
        try {
            const payload = await this.api.query(this.state.criteria, this.state.tracking);
            if (ticket !== this.sequence)
                return; // a newer query superseded this one
            this.events.onQuery(payload, this.state);
        }
        catch (error) {
            if (ticket !== this.sequence)
                return;
            this.report(error);
        }
    }
    async openCluster(members) {
        this.state = { ...this.state, selectedCluster: members, selectedTarget: null };
        try {
            const payload = await this.api.network(this.state.criteria, members);
            this.events.onNetwork(payload, members);
        }
        catch (error) {
            this.report(error);
        }
    }
    async openTarget(id) {
        this.state = { ...this.state, selectedTarget: id };
        try {
            const payload = await this.api.target(this.state.criteria, id);
            this.events.onTarget(payload);
        }
        catch (error) {
            this.report(error);
        }
    }
    async uploadAbstract(text) {
        try {
            const payload = await this.api.uploadAbstract(text);
            this.events.onUpload(payload);
        }
        catch (error) {
            this.report(error);
        }
    }
    report(error) {
        const anyError = error;
        this.events.onError(anyError.code ?? "Error", anyError.message ?? String(error));
    }
}
