#include "aplog/aplog.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "aplog/error.hpp"
#include "aplog/oracle.hpp"
#include "aplog/session.hpp"

struct aplog_session {
    aplog::Session session;
    std::string error;
    aplog_trace_fn trace = nullptr;
    void* traceUser = nullptr;
};

struct aplog_query {
    aplog_session* owner;
    std::unique_ptr<aplog::QueryRun> run;
};

namespace {

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
aplog_status guarded(aplog_session* s, aplog_status onError, F&& f) {
    if (!s) return APLOG_ERR_ARG;
    try {
        s->error.clear();
        return f();
    } catch (const aplog::LoadError& e) {
        s->error = e.what();
        return onError;
    } catch (const aplog::OracleError& e) {
        s->error = e.what();
        return APLOG_ERR_ORACLE;
    } catch (const std::exception& e) {
        s->error = e.what();
        return APLOG_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

aplog_session* aplog_session_new(void) {
    try {
        return new aplog_session();
    } catch (...) {
        return nullptr;
    }
}

void aplog_session_free(aplog_session* s) { delete s; }

aplog_status aplog_set_depth(aplog_session* s, size_t steps) {
    if (!s || steps == 0) return APLOG_ERR_ARG;
    s->session.setDepth(steps);
    return APLOG_OK;
}

aplog_status aplog_set_trace(aplog_session* s, aplog_trace_fn fn, void* user) {
    if (!s) return APLOG_ERR_ARG;
    s->trace = fn;
    s->traceUser = user;
    if (fn)
        s->session.setTrace([s](const std::string& line) { s->trace(line.c_str(), s->traceUser); });
    else
        s->session.setTrace(nullptr);
    return APLOG_OK;
}

aplog_status aplog_set_raw(aplog_session* s, int raw) {
    if (!s) return APLOG_ERR_ARG;
    s->session.setRaw(raw != 0);
    return APLOG_OK;
}

aplog_status aplog_load_file(aplog_session* s, const char* path) {
    if (!path) return APLOG_ERR_ARG;
    return guarded(s, APLOG_ERR_LOAD, [&] {
        s->session.loadFile(path);
        return APLOG_OK;
    });
}

aplog_status aplog_load_string(aplog_session* s, const char* text, const char* name) {
    if (!text) return APLOG_ERR_ARG;
    return guarded(s, APLOG_ERR_LOAD, [&] {
        s->session.loadString(text, name ? name : "<string>");
        return APLOG_OK;
    });
}

const char* aplog_last_error(const aplog_session* s) { return s ? s->error.c_str() : ""; }

aplog_status aplog_nu_goal_report(aplog_session* s, char** out, size_t* count) {
    if (!out) return APLOG_ERR_ARG;
    return guarded(s, APLOG_ERR_INTERNAL, [&] {
        auto ds = s->session.nuGoalReport();
        std::string text;
        for (const auto& d : ds) text += d.loc.str() + ": warning: " + d.message + "\n";
        *out = dup(text);
        if (count) *count = ds.size();
        return APLOG_OK;
    });
}

aplog_status aplog_show_elaborated(aplog_session* s, char** out) {
    if (!out) return APLOG_ERR_ARG;
    return guarded(s, APLOG_ERR_INTERNAL, [&] {
        *out = dup(s->session.showElaborated());
        return APLOG_OK;
    });
}

aplog_status aplog_oracle(aplog_session* s, size_t depth, size_t pool, char** out) {
    if (!out) return APLOG_ERR_ARG;
    return guarded(s, APLOG_ERR_ORACLE, [&] {
        std::string text;
        for (const auto& line : s->session.oracle(depth, pool)) text += line + "\n";
        *out = dup(text);
        return APLOG_OK;
    });
}

size_t aplog_file_query_count(const aplog_session* s) { return s ? s->session.fileQueries().size() : 0; }

const char* aplog_file_query(const aplog_session* s, size_t i) {
    if (!s || i >= s->session.fileQueries().size()) return nullptr;
    return s->session.fileQueries()[i].c_str();
}

aplog_status aplog_query_open(aplog_session* s, const char* goal, aplog_query** out) {
    if (!goal || !out) return APLOG_ERR_ARG;
    return guarded(s, APLOG_ERR_QUERY, [&] {
        auto q = std::make_unique<aplog_query>();
        q->owner = s;
        q->run = s->session.query(goal);
        *out = q.release();
        return APLOG_OK;
    });
}

aplog_status aplog_query_next(aplog_query* q, char** answer) {
    if (!q || !answer) return APLOG_ERR_ARG;
    return guarded(q->owner, APLOG_ERR_INTERNAL, [&] {
        aplog::Answer a;
        switch (q->run->next(a)) {
            case aplog::AnswerStream::Status::Answer: *answer = dup(a.text()); return APLOG_OK;
            case aplog::AnswerStream::Status::Exhausted: *answer = nullptr; return APLOG_NO_MORE;
            case aplog::AnswerStream::Status::DepthLimit: *answer = nullptr; return APLOG_ERR_DEPTH;
        }
        return APLOG_ERR_INTERNAL;
    });
}

void aplog_query_free(aplog_query* q) { delete q; }

void aplog_string_free(char* str) { std::free(str); }

}  // extern "C"
