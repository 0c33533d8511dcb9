#include <stdio.h>
#include <string.h>

#include "derivkit.h"

int main(void) {
    DkSuite *suite = NULL;
    if (dk_suite_new("{\"chart\": \"standard:1\", \"ids\": [\"EQ2.3\", \"NIL-EXP\"]}", &suite) != DK_STATUS_OK) {
        fprintf(stderr, "new: %s\n", dk_last_error());
        return 1;
    }
    if (dk_suite_run(suite) != DK_STATUS_OK) {
        return 2;
    }
    uintptr_t pass = 0;
    dk_suite_summary(suite, &pass, NULL, NULL);
    char *json = NULL;
    dk_suite_report_json(suite, &json);
    int ok = pass == 2 && json != NULL && strstr(json, "\"NIL-EXP\"") != NULL;
    dk_string_free(json);
    dk_suite_free(suite);

    DkSuite *bad = NULL;
    ok = ok && dk_suite_new("{\"rank\": 0}", &bad) == DK_STATUS_INVALID_CONFIG && bad == NULL;
    printf("%s\n", ok ? "ok" : "mismatch");
    return ok ? 0 : 3;
}
