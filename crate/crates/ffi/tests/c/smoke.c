#include <stdio.h>
#include <string.h>
#include "twisted_double.h"

static const char *V4 = "order 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";
static const char *ALPHA = "cocycle N=2\n2 1 1\n2 3 1\n3 1 1\n3 3 1\n";

int main(void) {
    TdGroup *g = NULL;
    TdCocycle *c = NULL;
    TdAlgebra *a = NULL;
    size_t order = 0, center = 0, dims[4], len = 0;
    if (td_group_from_text(V4, &g) != TD_STATUS_OK) return 1;
    if (td_group_order(g, &order) != TD_STATUS_OK || order != 4) return 2;
    if (td_cocycle_from_text(g, ALPHA, &c) != TD_STATUS_OK) return 3;
    if (td_algebra_new(c, &a) != TD_STATUS_OK) return 4;
    if (td_algebra_center_dim(a, &center) != TD_STATUS_OK || center != 1) return 5;
    if (td_algebra_simple_dims(a, 1e-9, 1, dims, 4, &len) != TD_STATUS_OK || len != 1 || dims[0] != 2) return 6;
    if (td_group_from_text("order 2\n0 1\n", &g) != TD_STATUS_PARSE) return 7;
    if (td_last_error_message() == NULL) return 8;
    td_algebra_free(a);
    td_cocycle_free(c);
    td_group_free(g);
    printf("ok\n");
    return 0;
}
