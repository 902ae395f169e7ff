#include <stdio.h>

#include "wflag.h"

int main(void) {
    const int64_t mu[4] = {0, 0, 1, 1};
    WflagVariety *v = NULL;
    if (wflag_variety_new("fl13", mu, 4, 0, &v) != WFLAG_STATUS_OK) {
        fprintf(stderr, "new: %s\n", wflag_last_error());
        return 1;
    }
    if (wflag_variety_apply(v, "cone:1,section:2,section:2,section:3") != WFLAG_STATUS_OK) {
        fprintf(stderr, "apply: %s\n", wflag_last_error());
        return 1;
    }
    int64_t k = 0, num = 0, den = 0;
    wflag_variety_canonical_degree(v, &k);
    wflag_variety_degree(v, &num, &den);
    printf("K=%lld D^3=%lld/%lld\n", (long long)k, (long long)num, (long long)den);

    if (wflag_variety_apply(v, "section:5") == WFLAG_STATUS_OK) {
        return 1;
    }
    printf("error: %s\n", wflag_last_error());
    wflag_variety_free(v);
    return 0;
}
