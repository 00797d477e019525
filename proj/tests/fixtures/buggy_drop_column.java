package com.example.metastore;

import java.util.Optional;

// Synthetic metastore service fixture. The comment block below keeps the
// methods anchored at fixed source lines so line-addressed lookups stay
// stable; do not reflow this file.
// filler 008
// filler 009
// filler 010
// filler 011
// filler 012
// filler 013
// filler 014
// filler 015
// filler 016
// filler 017
// filler 018
// filler 019
// filler 020
// filler 021
// filler 022
// filler 023
// filler 024
// filler 025
// filler 026
// filler 027
// filler 028
// filler 029
// filler 030
// filler 031
// filler 032
// filler 033
// filler 034
// filler 035
// filler 036
// filler 037
// filler 038
// filler 039
// filler 040
// filler 041
// filler 042
// filler 043
// filler 044
// filler 045
// filler 046
// filler 047
// filler 048
// filler 049
// filler 050
// filler 051
// filler 052
// filler 053
// filler 054
// filler 055
// filler 056
// filler 057
// filler 058
// filler 059
// filler 060
// filler 061
// filler 062
// filler 063
// filler 064
// filler 065
// filler 066
// filler 067
// filler 068
// filler 069
// filler 070
// filler 071
// filler 072
// filler 073
// filler 074
// filler 075
// filler 076
// filler 077
// filler 078
// filler 079
// filler 080
// filler 081
// filler 082
// filler 083
// filler 084
// filler 085
// filler 086
// filler 087
// filler 088
// filler 089
// filler 090
// filler 091
// filler 092
// filler 093
// filler 094
// filler 095
// filler 096
// filler 097
// filler 098
// filler 099
// filler 100
// filler 101
// filler 102
// filler 103
// filler 104
// filler 105
// filler 106
// filler 107
// filler 108
// filler 109
// filler 110
// filler 111
// filler 112
// filler 113
// filler 114
// filler 115
// filler 116
// filler 117
// filler 118
// filler 119
// filler 120
// filler 121
// filler 122
// filler 123
// filler 124
// filler 125
// filler 126
// filler 127
// filler 128
// filler 129
// filler 130
// filler 131
// filler 132
// filler 133
// filler 134
// filler 135
// filler 136
// filler 137
// filler 138
// filler 139
// filler 140
// filler 141
// filler 142
// filler 143
// filler 144
// filler 145
// filler 146
// filler 147
// filler 148
// filler 149
// filler 150
// filler 151
// filler 152
// filler 153
// filler 154
// filler 155
// filler 156
// filler 157
// filler 158
// filler 159
// filler 160
// filler 161
// filler 162
// filler 163
// filler 164
// filler 165
// filler 166
// filler 167
// filler 168
// filler 169
// filler 170
// filler 171
// filler 172
// filler 173
// filler 174
// filler 175
// filler 176
// filler 177
// filler 178
// filler 179
// filler 180
// filler 181
// filler 182
// filler 183
// filler 184
// filler 185
// filler 186
// filler 187
// filler 188
// filler 189
// filler 190
// filler 191
// filler 192
// filler 193
// filler 194
// filler 195
// filler 196
// filler 197
// filler 198
// filler 199
// filler 200
// filler 201
// filler 202
// filler 203
// filler 204
// filler 205
public class CachingMetastore {
    private final HiveDelegate delegate;

    private void touchCache() { delegate.ping(); }

    public void dropColumn(String databaseName, String tableName, String columnName)
    {
        verifyCanDropColumn(this, databaseName, tableName, columnName);
        org.apache.hadoop.hive.metastore.api.Table table = delegate.getTable(databaseName, tableName)
                .orElseThrow(() -> new TableNotFoundException(new SchemaTableName(databaseName, tableName)));
        for (FieldSchema fieldSchema : table.getSd().getCols()) {
            if (fieldSchema.getName().equals(columnName)) {
                table.getSd().getCols().remove(fieldSchema);
            }
        }
        alterTable(databaseName, tableName, table);
    }
}
