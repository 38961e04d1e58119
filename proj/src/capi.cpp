#include "siamdmft.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "config.hpp"
#include "runner.hpp"

struct siam_config {
    siam::RunConfig cfg;
};

namespace {

thread_local std::string last_error;

siam_status fail(siam_status status, const std::string& message) {
    last_error = message;
    return status;
}

// Distinguish the error classes our C++ layer reports through exception
// types and message conventions.
siam_status status_for(const std::exception& e) {
    if (dynamic_cast<const siam::io_error*>(&e)) return SIAM_ERR_IO;
    if (dynamic_cast<const std::invalid_argument*>(&e)) {
        if (std::string(e.what()).find("unknown config key") != std::string::npos)
            return SIAM_ERR_UNKNOWN_KEY;
        return SIAM_ERR_INVALID_VALUE;
    }
    return SIAM_ERR_RUN;
}

siam_status copy_out(const std::string& text, char* buffer, size_t size) {
    if (size == 0 || text.size() + 1 > size)
        return fail(SIAM_ERR_BUFFER_TOO_SMALL,
                    "buffer of " + std::to_string(size) + " bytes is too small, need " +
                        std::to_string(text.size() + 1));
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return SIAM_OK;
}

}  // namespace

extern "C" {

const char* siam_version(void) { return "1.0.0"; }

const char* siam_status_name(siam_status status) {
    switch (status) {
        case SIAM_OK: return "SIAM_OK";
        case SIAM_ERR_NULL_ARGUMENT: return "SIAM_ERR_NULL_ARGUMENT";
        case SIAM_ERR_UNKNOWN_KEY: return "SIAM_ERR_UNKNOWN_KEY";
        case SIAM_ERR_INVALID_VALUE: return "SIAM_ERR_INVALID_VALUE";
        case SIAM_ERR_PARSE: return "SIAM_ERR_PARSE";
        case SIAM_ERR_IO: return "SIAM_ERR_IO";
        case SIAM_ERR_RUN: return "SIAM_ERR_RUN";
        case SIAM_ERR_BUFFER_TOO_SMALL: return "SIAM_ERR_BUFFER_TOO_SMALL";
        case SIAM_ERR_UNKNOWN_COMMAND: return "SIAM_ERR_UNKNOWN_COMMAND";
    }
    return "SIAM_STATUS_UNKNOWN";
}

const char* siam_last_error(void) { return last_error.c_str(); }

siam_config* siam_config_create(void) { return new (std::nothrow) siam_config(); }

void siam_config_destroy(siam_config* cfg) { delete cfg; }

siam_status siam_config_load_string(siam_config* cfg, const char* text) {
    if (!cfg || !text) return fail(SIAM_ERR_NULL_ARGUMENT, "cfg and text must be non-NULL");
    try {
        // Apply onto a copy so a bad line leaves cfg untouched.
        siam::RunConfig merged = cfg->cfg;
        siam::apply_config(merged, text);
        merged.validate();
        cfg->cfg = merged;
        return SIAM_OK;
    } catch (const std::exception& e) {
        siam_status status = status_for(e);
        return fail(status == SIAM_ERR_INVALID_VALUE ? SIAM_ERR_PARSE : status, e.what());
    }
}

siam_status siam_config_load_file(siam_config* cfg, const char* path) {
    if (!cfg || !path) return fail(SIAM_ERR_NULL_ARGUMENT, "cfg and path must be non-NULL");
    std::ifstream in(path);
    if (!in) return fail(SIAM_ERR_IO, std::string("cannot read config file ") + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return siam_config_load_string(cfg, text.c_str());
}

siam_status siam_config_set(siam_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value)
        return fail(SIAM_ERR_NULL_ARGUMENT, "cfg, key and value must be non-NULL");
    try {
        siam::set_key(cfg->cfg, key, value);
        return SIAM_OK;
    } catch (const std::exception& e) {
        return fail(status_for(e), e.what());
    }
}

siam_status siam_config_get(const siam_config* cfg, const char* key, char* buffer, size_t size) {
    if (!cfg || !key || !buffer)
        return fail(SIAM_ERR_NULL_ARGUMENT, "cfg, key and buffer must be non-NULL");
    try {
        return copy_out(siam::get_key(cfg->cfg, key), buffer, size);
    } catch (const std::exception& e) {
        return fail(status_for(e), e.what());
    }
}

siam_status siam_run(const siam_config* cfg, const char* subcommand, char* summary,
                     size_t summary_size) {
    if (!cfg || !subcommand)
        return fail(SIAM_ERR_NULL_ARGUMENT, "cfg and subcommand must be non-NULL");
    std::vector<std::string> known = siam::subcommands();
    if (std::find(known.begin(), known.end(), subcommand) == known.end())
        return fail(SIAM_ERR_UNKNOWN_COMMAND,
                    std::string("unknown subcommand '") + subcommand + "'");
    try {
        std::string result = siam::run_subcommand(subcommand, cfg->cfg);
        if (summary) return copy_out(result, summary, summary_size);
        return SIAM_OK;
    } catch (const std::exception& e) {
        return fail(status_for(e), e.what());
    }
}

}  // extern "C"
