#include "gorcalc.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "gorcalc/session.hpp"

using gorcalc::CalcError;
using gorcalc::Errc;

struct gc_session {
    gorcalc::Session impl;
    std::string last_error;
};

namespace {

char* heap_copy(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

gc_status status_of(Errc e) {
    switch (e) {
        case Errc::parse_error: return GC_PARSE_ERROR;
        case Errc::domain_error: return GC_DOMAIN_ERROR;
        case Errc::precondition: return GC_PRECONDITION;
        case Errc::oracle_budget: return GC_ORACLE_BUDGET;
        case Errc::io_error: return GC_IO_ERROR;
        case Errc::usage_error: return GC_USAGE_ERROR;
        case Errc::internal: return GC_INTERNAL;
    }
    return GC_INTERNAL;
}

template <typename F>
gc_status guarded(gc_session* s, F&& fn) {
    if (!s) return GC_USAGE_ERROR;
    try {
        fn();
        return GC_OK;
    } catch (const CalcError& e) {
        s->last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        s->last_error = e.what();
        return GC_INTERNAL;
    } catch (...) {
        s->last_error = "unknown failure";
        return GC_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* gc_version(void) { return gorcalc::tool_version(); }

gc_session* gc_session_new(void) {
    try {
        return new gc_session();
    } catch (...) {
        return nullptr;
    }
}

void gc_session_free(gc_session* s) { delete s; }

gc_status gc_execute_line(gc_session* s, const char* line, char** out) {
    if (!s) return GC_USAGE_ERROR;
    if (!line) {
        s->last_error = "line is NULL";
        return GC_USAGE_ERROR;
    }
    return guarded(s, [&] {
        std::string rendered = s->impl.execute_line(line);
        if (out) *out = heap_copy(rendered);
    });
}

const char* gc_last_error(const gc_session* s) {
    return s ? s->last_error.c_str() : "session is NULL";
}

long gc_case_count(const gc_session* s) {
    return s ? static_cast<long>(s->impl.report().cases.size()) : 0;
}

long gc_failure_count(const gc_session* s) { return s ? s->impl.report().failures() : 0; }

long gc_mismatch_count(const gc_session* s) { return s ? s->impl.report().mismatches : 0; }

gc_status gc_render_report(gc_session* s, int as_json, char** out) {
    if (!s) return GC_USAGE_ERROR;
    if (!out) {
        s->last_error = "out is NULL";
        return GC_USAGE_ERROR;
    }
    return guarded(s, [&] {
        *out = heap_copy(as_json ? s->impl.report().json() : s->impl.report().text());
    });
}

gc_status gc_write_report(gc_session* s, const char* path, int as_json) {
    if (!s) return GC_USAGE_ERROR;
    if (!path) {
        s->last_error = "path is NULL";
        return GC_USAGE_ERROR;
    }
    return guarded(s, [&] { s->impl.write_report(path, as_json != 0); });
}

void gc_string_free(char* p) { std::free(p); }

}  // extern "C"
