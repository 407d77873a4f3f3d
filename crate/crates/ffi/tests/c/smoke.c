#include <stdio.h>
#include <string.h>
#include "leavitt.h"

int main(void) {
    const char *json = "{\"kind\":\"finite\",\"vertices\":[\"v\"],\"edges\":["
                       "{\"id\":\"e\",\"range\":\"v\",\"source\":\"v\"},"
                       "{\"id\":\"f\",\"range\":\"v\",\"source\":\"v\"}]}";
    LvGraph *g = NULL;
    if (lv_graph_from_json(json, 0, &g) != LV_STATUS_OK) return 1;
    LvElement *x = NULL;
    if (lv_element_parse(g, "[e|e]", &x) != LV_STATUS_OK) return 2;
    char *s = NULL;
    if (lv_element_to_string(x, &s) != LV_STATUS_OK) return 3;
    int bad = strcmp(s, "[v|v] - [f|f]") != 0;
    printf("%s\n", s);
    lv_string_free(s);
    size_t dim = 0;
    if (lv_fd_dimension(g, 1, 2, &dim) != LV_STATUS_OK || dim != 4) bad = 1;
    if (lv_element_parse(g, "[e|q]", &x) != LV_STATUS_UNKNOWN_ID) bad = 1;
    lv_element_free(x);
    lv_graph_free(g);
    return bad ? 4 : 0;
}
