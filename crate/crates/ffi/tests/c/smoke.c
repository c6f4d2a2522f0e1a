#include <stdio.h>
#include <string.h>
#include "segcover.h"

static const char *BOX_SPLIT =
    "{\"segments\":["
    "{\"id\":0,\"x1\":0,\"y1\":0,\"x2\":4,\"y2\":0},"
    "{\"id\":1,\"x1\":4,\"y1\":0,\"x2\":4,\"y2\":4},"
    "{\"id\":2,\"x1\":0,\"y1\":4,\"x2\":4,\"y2\":4},"
    "{\"id\":3,\"x1\":0,\"y1\":0,\"x2\":0,\"y2\":4},"
    "{\"id\":4,\"x1\":2,\"y1\":0,\"x2\":2,\"y2\":4}]}";

int main(void) {
    SegcoverArrangement *arr = NULL;
    if (segcover_arrangement_from_json(BOX_SPLIT, &arr) != SEGCOVER_STATUS_OK) {
        fprintf(stderr, "load: %s\n", segcover_last_error());
        return 1;
    }
    size_t cells = 0;
    segcover_arrangement_cell_count(arr, &cells);

    char *cover = NULL;
    SegcoverStatus st = segcover_min_cover(arr, SEGCOVER_MODE_ALL, -1, 24, &cover);
    uint32_t pick[] = {0};
    bool ok = false;
    segcover_is_cover(arr, pick, 1, SEGCOVER_MODE_ALL, &ok);
    printf("%zu %d %s %d\n", cells, (int)st, cover, (int)ok);
    segcover_string_free(cover);

    SegcoverArrangement *bad = NULL;
    st = segcover_arrangement_from_json("{\"segments\":[]}", &bad);
    printf("%d %s\n", (int)st, segcover_last_error());

    segcover_arrangement_free(arr);
    return 0;
}
