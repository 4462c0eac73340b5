#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "octalab.h"

#define EXPECT(cond)                                                  \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    OctalabWorkbench *wb = NULL;
    EXPECT(octalab_workbench_new(NULL, 0, 0, &wb) == OCTALAB_STATUS_OK);

    uint64_t order = 0;
    EXPECT(octalab_group_order(wb, &order) == OCTALAB_STATUS_OK);
    EXPECT(order == 80640);

    size_t points = 0, lines = 0;
    EXPECT(octalab_octagon_size(wb, &points, &lines) == OCTALAB_STATUS_OK);
    EXPECT(points == 315 && lines == 525);

    uint32_t line[3];
    EXPECT(octalab_octagon_line(wb, 0, line) == OCTALAB_STATUS_OK);
    uint32_t d = 9;
    EXPECT(octalab_octagon_distance(wb, line[0], line[1], &d) == OCTALAB_STATUS_OK);
    EXPECT(d == 1);
    EXPECT(octalab_octagon_line(wb, lines, line) == OCTALAB_STATUS_INVALID_ARGUMENT);

    char small[4];
    size_t needed = 0;
    EXPECT(octalab_last_error(small, sizeof small, &needed) == OCTALAB_STATUS_BUFFER_TOO_SMALL);
    char *msg = malloc(needed);
    EXPECT(octalab_last_error(msg, needed, &needed) == OCTALAB_STATUS_OK);
    EXPECT(strstr(msg, "out of range") != NULL);
    free(msg);

    char *json = NULL;
    EXPECT(octalab_run_suite(wb, "group", &json) == OCTALAB_STATUS_OK);
    EXPECT(strstr(json, "group.central_involutions") != NULL);
    octalab_string_free(json);

    octalab_workbench_free(wb);
    puts("ok");
    return 0;
}
