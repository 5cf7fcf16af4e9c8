// Command-line front end; talks to the core exclusively through the C API.

#include <cstdio>
#include <cstring>

#include "semlink.h"

namespace {

int exit_code_for(semlink_status status) {
    if (status == SEMLINK_OK) return 0;
    if (status == SEMLINK_ERR_IO) return 2;
    return 1;
}

int fail(semlink_status status) {
    std::fprintf(stderr, "error: %s\n", semlink_last_error());
    return exit_code_for(status);
}

int cmd_run(const char* config_path) {
    semlink_experiment* experiment = nullptr;
    semlink_status status = semlink_experiment_open(config_path, &experiment);
    if (status != SEMLINK_OK) return fail(status);

    char* csv = nullptr;
    status = semlink_experiment_run(experiment, &csv);
    if (status != SEMLINK_OK) {
        semlink_experiment_close(experiment);
        return fail(status);
    }
    const char* output_path = semlink_experiment_output_path(experiment);
    if (output_path[0] == '\0') {
        std::fputs(csv, stdout);
    } else {
        std::fprintf(stderr, "wrote %s\n", output_path);
    }
    semlink_string_free(csv);
    semlink_experiment_close(experiment);
    return 0;
}

int cmd_schemes() {
    char* text = nullptr;
    const semlink_status status = semlink_schemes_text(&text);
    if (status != SEMLINK_OK) return fail(status);
    std::fputs(text, stdout);
    semlink_string_free(text);
    return 0;
}

int cmd_budget(const char* scheme) {
    char* text = nullptr;
    const semlink_status status = semlink_budget_text(scheme, &text);
    if (status != SEMLINK_OK) return fail(status);
    std::fputs(text, stdout);
    semlink_string_free(text);
    return 0;
}

int cmd_make_fixtures(const char* dir) {
    const semlink_status status = semlink_write_demo_fixtures(dir);
    if (status != SEMLINK_OK) return fail(status);
    std::fprintf(stderr, "wrote demo fixtures into %s\n", dir);
    return 0;
}

int usage() {
    std::fprintf(stderr,
                 "usage: semlink <command> [args]\n"
                 "\n"
                 "  run <config>         run the configured sweep, emit the CSV report\n"
                 "  schemes              print the scheme catalog and the adaptive table\n"
                 "  budget <scheme>      print the symbol budget of one scheme\n"
                 "  make-fixtures <dir>  write deterministic demo payload files\n"
                 "\n"
                 "exit codes: 0 success, 1 configuration error, 2 I/O error\n");
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) return usage();
    const char* command = argv[1];
    if (std::strcmp(command, "run") == 0 && argc == 3) return cmd_run(argv[2]);
    if (std::strcmp(command, "schemes") == 0 && argc == 2) return cmd_schemes();
    if (std::strcmp(command, "budget") == 0 && argc == 3) return cmd_budget(argv[2]);
    if (std::strcmp(command, "make-fixtures") == 0 && argc == 3)
        return cmd_make_fixtures(argv[2]);
    return usage();
}
